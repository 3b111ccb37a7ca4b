#include "orbitlab/vector.hpp"

#include <algorithm>

namespace orbitlab {

FinVec FinVec::basis(Index k) {
  FinVec out;
  out.entries_.emplace_back(k, Rational(1));
  return out;
}

FinVec FinVec::from_sorted(std::vector<Entry> entries) {
  FinVec out;
  out.entries_ = std::move(entries);
  return out;
}

FinVec FinVec::from_entries(std::vector<Entry> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.first < b.first; });
  std::vector<Entry> merged;
  merged.reserve(entries.size());
  for (auto& e : entries) {
    if (!merged.empty() && merged.back().first == e.first) {
      merged.back().second += e.second;
    } else {
      merged.push_back(std::move(e));
    }
  }
  std::erase_if(merged, [](const Entry& e) { return sgn(e.second) == 0; });
  return from_sorted(std::move(merged));
}

std::optional<Index> FinVec::max_index() const {
  if (entries_.empty()) return std::nullopt;
  return entries_.back().first;
}

std::optional<Index> FinVec::min_index() const {
  if (entries_.empty()) return std::nullopt;
  return entries_.front().first;
}

Rational FinVec::coeff(Index k) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), k,
                             [](const Entry& e, Index key) { return e.first < key; });
  if (it != entries_.end() && it->first == k) return it->second;
  return Rational(0);
}

FinVec FinVec::shifted(Index steps) const {
  FinVec out = *this;
  for (auto& e : out.entries_) e.first += steps;
  return out;
}

FinVec FinVec::coshifted(Index steps) const {
  FinVec out;
  for (const auto& e : entries_) {
    if (e.first >= steps) out.entries_.emplace_back(e.first - steps, e.second);
  }
  return out;
}

FinVec FinVec::scaled(const Rational& alpha) const {
  if (sgn(alpha) == 0) return {};
  FinVec out = *this;
  for (auto& e : out.entries_) e.second *= alpha;
  return out;
}

namespace {

template <typename Combine>
std::vector<FinVec::Entry> merge(std::span<const FinVec::Entry> a, std::span<const FinVec::Entry> b,
                                 Combine combine) {
  std::vector<FinVec::Entry> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, combine(Rational(0), b[j].second));
      ++j;
    } else {
      Rational v = combine(a[i].second, b[j].second);
      if (sgn(v) != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

FinVec& FinVec::operator+=(const FinVec& other) {
  entries_ = merge(entries_, other.entries_,
                   [](const Rational& x, const Rational& y) { return Rational(x + y); });
  return *this;
}

FinVec& FinVec::operator-=(const FinVec& other) {
  entries_ = merge(entries_, other.entries_,
                   [](const Rational& x, const Rational& y) { return Rational(x - y); });
  return *this;
}

Rational inner(const FinVec& u, const FinVec& v) {
  Rational acc(0);
  auto a = u.entries();
  auto b = v.entries();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) {
      ++i;
    } else if (b[j].first < a[i].first) {
      ++j;
    } else {
      acc += a[i].second * b[j].second;
      ++i;
      ++j;
    }
  }
  return acc;
}

Rational inner_pair(const PairVec& x, const PairVec& z) {
  return inner(x.top, z.top) + inner(x.bottom, z.bottom);
}

Rational inner(const Vector& u, const Vector& v) {
  if (u.index() != v.index()) throw DomainError("inner: vector kinds differ");
  if (const auto* a = std::get_if<FinVec>(&u)) return inner(*a, std::get<FinVec>(v));
  return inner_pair(std::get<PairVec>(u), std::get<PairVec>(v));
}

Rational norm_sq(const FinVec& u) { return inner(u, u); }
Rational norm_sq(const PairVec& x) { return inner_pair(x, x); }
Rational norm_sq(const Vector& v) { return inner(v, v); }

bool is_zero(const Vector& v) {
  return std::visit([](const auto& w) { return w.is_zero(); }, v);
}

Vector scaled(const Vector& v, const Rational& alpha) {
  return std::visit([&](const auto& w) -> Vector { return w.scaled(alpha); }, v);
}

Vector difference(const Vector& u, const Vector& v) {
  if (u.index() != v.index()) throw DomainError("difference: vector kinds differ");
  if (const auto* a = std::get_if<FinVec>(&u)) return *a - std::get<FinVec>(v);
  return std::get<PairVec>(u) - std::get<PairVec>(v);
}

}  // namespace orbitlab
