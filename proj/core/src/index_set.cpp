#include "orbitlab/index_set.hpp"

#include <algorithm>
#include <limits>
#include <mutex>

namespace orbitlab {

struct SparseIndexSet::State {
  Generator generator;
  bool validate = true;
  std::mutex mutex;
  std::vector<Index> prefix;
  bool exhausted = false;

  // Extends until the last member exceeds bound or the set ends. Caller holds mutex.
  void extend_to(Index bound) {
    while (!exhausted && (prefix.empty() || prefix.back() <= bound)) {
      std::optional<Index> previous;
      if (!prefix.empty()) previous = prefix.back();
      auto next = generator(previous);
      if (!next) {
        exhausted = true;
        break;
      }
      if (validate) {
        if (*next == 0) throw DoublingViolation("index set members must be positive");
        if (previous && !(*next > *previous && *next - *previous > *previous)) {
          throw DoublingViolation("doubling property violated: " + std::to_string(*previous) +
                                  " and " + std::to_string(*next) + " do not satisfy 2i < j");
        }
      }
      prefix.push_back(*next);
    }
  }
};

SparseIndexSet::SparseIndexSet(Generator generator, std::string description)
    : state_(std::make_shared<State>()), description_(std::move(description)) {
  state_->generator = std::move(generator);
}

namespace {

SparseIndexSet::Generator list_generator(std::vector<Index> members) {
  return [members = std::move(members)](std::optional<Index> previous) -> std::optional<Index> {
    auto it = previous ? std::upper_bound(members.begin(), members.end(), *previous)
                       : members.begin();
    if (it == members.end()) return std::nullopt;
    return *it;
  };
}

std::string list_description(const std::vector<Index>& members) {
  std::string out = "{";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(members[i]);
  }
  return out + "}";
}

}  // namespace

SparseIndexSet SparseIndexSet::from_list(std::vector<Index> members) {
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] == 0) throw DoublingViolation("index set members must be positive");
    if (i > 0 && !(members[i] > members[i - 1] && members[i] - members[i - 1] > members[i - 1])) {
      throw DoublingViolation("doubling property violated: " + std::to_string(members[i - 1]) +
                              " and " + std::to_string(members[i]) + " do not satisfy 2i < j");
    }
  }
  auto desc = list_description(members);
  SparseIndexSet out(list_generator(std::move(members)), std::move(desc));
  return out;
}

SparseIndexSet SparseIndexSet::from_list_unchecked(std::vector<Index> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  auto desc = list_description(members);
  SparseIndexSet out(list_generator(std::move(members)), std::move(desc));
  out.state_->validate = false;
  return out;
}

void SparseIndexSet::materialize(Index bound) const {
  std::lock_guard lock(state_->mutex);
  state_->extend_to(bound);
}

bool SparseIndexSet::contains(Index i) const {
  std::lock_guard lock(state_->mutex);
  state_->extend_to(i);
  return std::binary_search(state_->prefix.begin(), state_->prefix.end(), i);
}

std::vector<Index> SparseIndexSet::members_in(Index lo, Index hi) const {
  if (lo > hi) return {};
  std::lock_guard lock(state_->mutex);
  state_->extend_to(hi);
  const auto& p = state_->prefix;
  return {std::lower_bound(p.begin(), p.end(), lo), std::upper_bound(p.begin(), p.end(), hi)};
}

std::vector<Index> SparseIndexSet::enumerate(Index bound) const { return members_in(0, bound); }

SparseIndexSet make_geometric_set(Index base, Index bound) {
  if (base <= 2) {
    throw DoublingViolation("geometric index set needs base >= 3: base " + std::to_string(base) +
                            " violates the doubling property 2i < j");
  }
  SparseIndexSet out(
      [base](std::optional<Index> previous) -> std::optional<Index> {
        if (!previous) return Index{1};
        if (*previous > std::numeric_limits<Index>::max() / base) return std::nullopt;
        return *previous * base;
      },
      "powers of " + std::to_string(base));
  out.materialize(bound);
  return out;
}

std::optional<Index> j_interval(const SparseIndexSet& set, Index k, Index n) {
  const Index hi = k + n;
  // k+n <= 2j  <=>  j >= ceil((k+n)/2)
  const Index lo = std::max(k, hi / 2 + hi % 2);
  auto found = set.members_in(lo, hi);
  if (found.size() > 1) {
    throw CorruptIndexSet("J_{" + std::to_string(k) + "," + std::to_string(n) + "} has " +
                          std::to_string(found.size()) + " members in " + set.description());
  }
  if (found.empty()) return std::nullopt;
  return found.front();
}

}  // namespace orbitlab
