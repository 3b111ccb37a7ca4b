#include "orbitlab/operator.hpp"

#include <variant>

namespace orbitlab {

namespace leaf {
struct Shift {};
struct Coshift {};
struct Projection {
  SparseIndexSet set;
};
struct Identity {};
struct Zero {};
struct Matrix {
  FiniteMatrix m;
};
struct Foguel {
  SparseIndexSet set;
};
struct Scale {
  Rational alpha;
  OperatorExpr a;
};
struct Sum {
  OperatorExpr a, b;
};
struct Compose {
  OperatorExpr a, b;
};
struct Power {
  OperatorExpr a;
  std::size_t exponent;
};
struct Block {
  OperatorExpr a, b, c, d;
};
}  // namespace leaf

struct OperatorExpr::Node {
  using Payload = std::variant<leaf::Shift, leaf::Coshift, leaf::Projection, leaf::Identity,
                               leaf::Zero, leaf::Matrix, leaf::Foguel, leaf::Scale, leaf::Sum,
                               leaf::Compose, leaf::Power, leaf::Block>;
  Domain domain;
  Payload payload;
};

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

template <typename T>
OperatorExpr make(Domain domain, T payload) {
  return OperatorExpr(std::make_shared<const OperatorExpr::Node>(
      OperatorExpr::Node{domain, std::move(payload)}));
}

void require_same(const Domain& a, const Domain& b, const char* what) {
  if (!(a == b)) {
    throw DomainError(std::string(what) + ": operand domains differ (" + to_string(a) + " vs " +
                      to_string(b) + ")");
  }
}

void require_kind(const Vector& x, const Domain& domain) {
  const bool is_pair = std::holds_alternative<PairVec>(x);
  if (is_pair != (domain.kind == Domain::Kind::Pair)) {
    throw DomainError("apply: " + std::string(is_pair ? "pair" : "sequence") +
                      " vector given to operator on " + to_string(domain));
  }
  if (domain.kind == Domain::Kind::Finite) {
    auto top = std::get<FinVec>(x).max_index();
    if (top && *top >= domain.dim) {
      throw DomainError("apply: coordinate " + std::to_string(*top) + " outside " +
                        to_string(domain));
    }
  }
}

FinVec project(const SparseIndexSet& set, const FinVec& x) {
  return x.filtered([&](Index i) { return set.contains(i); });
}

const FinVec& seq(const Vector& v) { return std::get<FinVec>(v); }

Vector apply_node(const OperatorExpr& a, const Vector& x);

Vector apply_node(const OperatorExpr& a, const Vector& x) {
  const auto& node = a.node();
  return std::visit(
      overloaded{
          [&](const leaf::Shift&) -> Vector { return seq(x).shifted(1); },
          [&](const leaf::Coshift&) -> Vector { return seq(x).coshifted(1); },
          [&](const leaf::Projection& p) -> Vector { return project(p.set, seq(x)); },
          [&](const leaf::Identity&) -> Vector { return x; },
          [&](const leaf::Zero&) -> Vector { return scaled(x, Rational(0)); },
          [&](const leaf::Matrix& m) -> Vector { return m.m.apply(seq(x)); },
          [&](const leaf::Foguel& f) -> Vector {
            const auto& p = std::get<PairVec>(x);
            return PairVec{p.top.coshifted(1) + project(f.set, p.bottom), p.bottom.shifted(1)};
          },
          [&](const leaf::Scale& s) -> Vector { return scaled(apply_node(s.a, x), s.alpha); },
          [&](const leaf::Sum& s) -> Vector {
            Vector lhs = apply_node(s.a, x);
            Vector rhs = apply_node(s.b, x);
            if (auto* l = std::get_if<FinVec>(&lhs)) return *l + std::get<FinVec>(rhs);
            return std::get<PairVec>(lhs) + std::get<PairVec>(rhs);
          },
          [&](const leaf::Compose& c) -> Vector { return apply_node(c.a, apply_node(c.b, x)); },
          [&](const leaf::Power& p) -> Vector { return apply_power(p.a, p.exponent, x); },
          [&](const leaf::Block& b) -> Vector {
            const auto& v = std::get<PairVec>(x);
            Vector top1 = apply_node(b.a, v.top);
            Vector top2 = apply_node(b.b, v.bottom);
            Vector bot1 = apply_node(b.c, v.top);
            Vector bot2 = apply_node(b.d, v.bottom);
            return PairVec{seq(top1) + seq(top2), seq(bot1) + seq(bot2)};
          },
      },
      node.payload);
}

}  // namespace

std::string to_string(const Domain& domain) {
  switch (domain.kind) {
    case Domain::Kind::Sequence:
      return "l2";
    case Domain::Kind::Pair:
      return "l2+l2";
    case Domain::Kind::Finite:
      return "R^" + std::to_string(domain.dim);
  }
  return "?";
}

const Domain& OperatorExpr::domain() const { return node_->domain; }

const SparseIndexSet* OperatorExpr::foguel_set() const {
  if (const auto* f = std::get_if<leaf::Foguel>(&node_->payload)) return &f->set;
  return nullptr;
}

std::string OperatorExpr::describe() const {
  return std::visit(
      overloaded{
          [](const leaf::Shift&) -> std::string { return "S"; },
          [](const leaf::Coshift&) -> std::string { return "S*"; },
          [](const leaf::Projection& p) -> std::string { return "P[" + p.set.description() + "]"; },
          [this](const leaf::Identity&) -> std::string { return "I[" + to_string(domain()) + "]"; },
          [this](const leaf::Zero&) -> std::string { return "O[" + to_string(domain()) + "]"; },
          [](const leaf::Matrix& m) -> std::string {
            std::string out = "M[";
            for (std::size_t r = 0; r < m.m.dim(); ++r) {
              out += r ? ";" : "";
              for (std::size_t c = 0; c < m.m.dim(); ++c) {
                out += (c ? "," : "") + m.m(r, c).get_str();
              }
            }
            return out + "]";
          },
          [](const leaf::Foguel& f) -> std::string { return "F[" + f.set.description() + "]"; },
          [](const leaf::Scale& s) -> std::string {
            return "(" + s.alpha.get_str() + "*" + s.a.describe() + ")";
          },
          [](const leaf::Sum& s) -> std::string {
            return "(" + s.a.describe() + "+" + s.b.describe() + ")";
          },
          [](const leaf::Compose& c) -> std::string {
            return "(" + c.a.describe() + "." + c.b.describe() + ")";
          },
          [](const leaf::Power& p) -> std::string {
            return p.a.describe() + "^" + std::to_string(p.exponent);
          },
          [](const leaf::Block& b) -> std::string {
            return "(" + b.a.describe() + " " + b.b.describe() + "; " + b.c.describe() + " " +
                   b.d.describe() + ")";
          },
      },
      node_->payload);
}

OperatorExpr shift() { return make(Domain::sequence(), leaf::Shift{}); }
OperatorExpr coshift() { return make(Domain::sequence(), leaf::Coshift{}); }
OperatorExpr projection(SparseIndexSet set) {
  return make(Domain::sequence(), leaf::Projection{std::move(set)});
}
OperatorExpr identity(Domain domain) { return make(domain, leaf::Identity{}); }
OperatorExpr zero(Domain domain) { return make(domain, leaf::Zero{}); }
OperatorExpr matrix(FiniteMatrix m) {
  const auto d = m.dim();
  return make(Domain::finite(d), leaf::Matrix{std::move(m)});
}
OperatorExpr foguel(SparseIndexSet set) { return make(Domain::pair(), leaf::Foguel{std::move(set)}); }

OperatorExpr scale(Rational alpha, OperatorExpr a) {
  alpha.canonicalize();
  const Domain d = a.domain();
  return make(d, leaf::Scale{std::move(alpha), std::move(a)});
}

OperatorExpr sum(OperatorExpr a, OperatorExpr b) {
  require_same(a.domain(), b.domain(), "sum");
  const Domain d = a.domain();
  return make(d, leaf::Sum{std::move(a), std::move(b)});
}

OperatorExpr compose(OperatorExpr a, OperatorExpr b) {
  require_same(a.domain(), b.domain(), "compose");
  const Domain d = a.domain();
  return make(d, leaf::Compose{std::move(a), std::move(b)});
}

OperatorExpr power(OperatorExpr a, std::size_t exponent) {
  const Domain d = a.domain();
  return make(d, leaf::Power{std::move(a), exponent});
}

OperatorExpr block(OperatorExpr a, OperatorExpr b, OperatorExpr c, OperatorExpr d) {
  for (const auto* op : {&a, &b, &c, &d}) {
    if (!(op->domain() == Domain::sequence())) {
      throw DomainError("block: entries must act on l2, got " + to_string(op->domain()));
    }
  }
  return make(Domain::pair(), leaf::Block{std::move(a), std::move(b), std::move(c), std::move(d)});
}

OperatorExpr adjoint(const OperatorExpr& a) {
  const auto& node = a.node();
  return std::visit(
      overloaded{
          [](const leaf::Shift&) { return coshift(); },
          [](const leaf::Coshift&) { return shift(); },
          [&](const leaf::Projection&) { return a; },
          [&](const leaf::Identity&) { return a; },
          [&](const leaf::Zero&) { return a; },
          [](const leaf::Matrix& m) { return matrix(m.m.transpose()); },
          [](const leaf::Foguel& f) {
            // (S* P; O S)* = (S O; P S*)
            return block(shift(), zero(Domain::sequence()), projection(f.set), coshift());
          },
          [](const leaf::Scale& s) { return scale(s.alpha, adjoint(s.a)); },
          [](const leaf::Sum& s) { return sum(adjoint(s.a), adjoint(s.b)); },
          [](const leaf::Compose& c) { return compose(adjoint(c.b), adjoint(c.a)); },
          [](const leaf::Power& p) { return power(adjoint(p.a), p.exponent); },
          [](const leaf::Block& b) {
            return block(adjoint(b.a), adjoint(b.c), adjoint(b.b), adjoint(b.d));
          },
      },
      node.payload);
}

Vector apply_once(const OperatorExpr& a, const Vector& x) {
  require_kind(x, a.domain());
  return apply_node(a, x);
}

Vector apply_power(const OperatorExpr& a, std::size_t n, const Vector& x) {
  require_kind(x, a.domain());
  const auto& payload = a.node().payload;
  if (std::holds_alternative<leaf::Shift>(payload)) return seq(x).shifted(n);
  if (std::holds_alternative<leaf::Coshift>(payload)) return seq(x).coshifted(n);
  if (const auto* f = std::get_if<leaf::Foguel>(&payload)) {
    // F^n = (S*^n P_n ; O S^n)
    const auto& v = std::get<PairVec>(x);
    return PairVec{v.top.coshifted(n) + pn_apply(f->set, n, v.bottom), v.bottom.shifted(n)};
  }
  Vector out = x;
  for (std::size_t i = 0; i < n; ++i) out = apply_node(a, out);
  return out;
}

Vector apply_adjoint(const OperatorExpr& a, const Vector& z) { return apply_once(adjoint(a), z); }

FinVec pn_recursive(const SparseIndexSet& set, std::size_t n, const FinVec& x) {
  FinVec acc;
  if (n == 0) return acc;
  // P_n = sum_{i=0}^{n-1} S*^(n-1-i) P S^i
  for (std::size_t i = 0; i < n; ++i) {
    acc += project(set, x.shifted(i)).coshifted(n - 1 - i);
  }
  return acc;
}

FinVec pn_closed_form(const SparseIndexSet& set, std::size_t n, Index k) {
  if (n == 0) return {};
  const Index m = n - 1;
  if (auto j = j_interval(set, k, m)) return FinVec::basis(2 * *j - (k + m));
  return {};
}

FinVec pn_apply(const SparseIndexSet& set, std::size_t n, const FinVec& x) {
  std::vector<FinVec::Entry> out;
  for (const auto& [k, v] : x.entries()) {
    FinVec image = pn_closed_form(set, n, k);
    for (const auto& [i, c] : image.entries()) out.emplace_back(i, v * c);
  }
  return FinVec::from_entries(std::move(out));
}

}  // namespace orbitlab
