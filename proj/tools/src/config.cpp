#include "orbitlab/cli/config.hpp"

#include <algorithm>

namespace orbitlab::cli {

namespace {

std::string child(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string type_name(const json& j) { return j.type_name(); }

}  // namespace

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::runtime_error("config error at " + (field.empty() ? std::string("<root>") : field) + ": " +
                         message),
      field_(std::move(field)) {}

ConfigError::ConfigError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("config error at line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + message),
      line_(line) {}

json parse_config_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    throw ConfigError(line, column, what);
  }
}

void Node::fail(const std::string& message) const { throw ConfigError(path_, message); }

bool Node::has(const std::string& key) const { return value_->is_object() && value_->contains(key); }

Node Node::at(const std::string& key) const {
  if (!value_->is_object()) fail("expected an object, found " + type_name(*value_));
  auto it = value_->find(key);
  if (it == value_->end()) throw ConfigError(child(path_, key), "missing required field");
  return Node(*it, child(path_, key));
}

std::optional<Node> Node::find(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return at(key);
}

Node Node::at(std::size_t i) const {
  if (!value_->is_array()) fail("expected an array, found " + type_name(*value_));
  if (i >= value_->size()) fail("index " + std::to_string(i) + " out of range");
  return Node((*value_)[i], path_ + "[" + std::to_string(i) + "]");
}

std::size_t Node::size() const {
  if (!value_->is_array()) fail("expected an array, found " + type_name(*value_));
  return value_->size();
}

std::uint64_t Node::as_uint() const {
  if (!value_->is_number_integer() || (value_->is_number_integer() && !value_->is_number_unsigned() &&
                                       value_->get<std::int64_t>() < 0)) {
    fail("expected a non-negative integer, found " + value_->dump());
  }
  return value_->get<std::uint64_t>();
}

std::string Node::as_string() const {
  if (!value_->is_string()) fail("expected a string, found " + type_name(*value_));
  return value_->get<std::string>();
}

bool Node::as_bool() const {
  if (!value_->is_boolean()) fail("expected true or false, found " + value_->dump());
  return value_->get<bool>();
}

double Node::as_double() const {
  if (!value_->is_number()) fail("expected a number, found " + value_->dump());
  return value_->get<double>();
}

Rational Node::as_rational() const {
  if (value_->is_number_integer()) {
    if (value_->is_number_unsigned()) return Rational(mpz_class(std::to_string(value_->get<std::uint64_t>())));
    return Rational(mpz_class(std::to_string(value_->get<std::int64_t>())));
  }
  if (value_->is_number_float()) fail("floating-point literal " + value_->dump() + "; write rationals as \"p/q\"");
  if (!value_->is_string()) fail("expected a rational \"p/q\", found " + type_name(*value_));
  try {
    return parse_rational(value_->get<std::string>());
  } catch (const ParseError& e) {
    fail(e.what());
  }
}

std::vector<std::uint64_t> Node::as_uint_list() const {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).as_uint());
  return out;
}

std::uint64_t Node::uint_or(const std::string& key, std::uint64_t fallback) const {
  auto n = find(key);
  return n ? n->as_uint() : fallback;
}

Rational Node::rational_or(const std::string& key, const Rational& fallback) const {
  auto n = find(key);
  return n ? n->as_rational() : fallback;
}

bool Node::bool_or(const std::string& key, bool fallback) const {
  auto n = find(key);
  return n ? n->as_bool() : fallback;
}

double Node::double_or(const std::string& key, double fallback) const {
  auto n = find(key);
  return n ? n->as_double() : fallback;
}

SparseIndexSet parse_index_set(const Node& spec) {
  const bool by_base = spec.has("sparse_base");
  const bool by_list = spec.has("set");
  if (by_base == by_list) spec.fail("give exactly one of \"sparse_base\" or \"set\"");
  if (by_base) {
    const Node base = spec.at("sparse_base");
    try {
      return make_geometric_set(base.as_uint(), 1u << 16);
    } catch (const DoublingViolation& e) {
      base.fail(e.what());
    }
  }
  const Node list = spec.at("set");
  try {
    return SparseIndexSet::from_list(list.as_uint_list());
  } catch (const DoublingViolation& e) {
    list.fail(e.what());
  }
}

namespace {

Domain parse_domain(const Node& n) {
  if (n.raw().is_number_integer()) {
    const auto dim = n.as_uint();
    if (dim == 0) n.fail("dimension must be at least 1");
    return Domain::finite(dim);
  }
  const auto s = n.as_string();
  if (s == "l2") return Domain::sequence();
  if (s == "l2+l2") return Domain::pair();
  n.fail("unknown domain \"" + s + "\" (use \"l2\", \"l2+l2\" or a dimension)");
}

FiniteMatrix parse_matrix(const Node& entries) {
  std::vector<std::vector<Rational>> rows;
  for (std::size_t r = 0; r < entries.size(); ++r) {
    const Node row = entries.at(r);
    rows.emplace_back();
    for (std::size_t c = 0; c < row.size(); ++c) rows.back().push_back(row.at(c).as_rational());
  }
  try {
    return FiniteMatrix::from_rows(rows);
  } catch (const std::invalid_argument& e) {
    entries.fail(e.what());
  }
}

OperatorExpr parse_operator_node(const Node& spec) {
  const std::string kind = spec.at("kind").as_string();
  if (kind == "shift") return shift();
  if (kind == "coshift") return coshift();
  if (kind == "projection") return projection(parse_index_set(spec));
  if (kind == "foguel") return foguel(parse_index_set(spec));
  if (kind == "identity") return identity(parse_domain(spec.at("domain")));
  if (kind == "zero") return zero(parse_domain(spec.at("domain")));
  if (kind == "matrix") return matrix(parse_matrix(spec.at("entries")));
  if (kind == "scale") return scale(spec.at("alpha").as_rational(), parse_operator_node(spec.at("of")));
  if (kind == "power") return power(parse_operator_node(spec.at("of")), spec.at("exponent").as_uint());
  if (kind == "sum" || kind == "compose") {
    const Node terms = spec.at("of");
    if (terms.size() == 0) terms.fail("needs at least one operand");
    OperatorExpr acc = parse_operator_node(terms.at(0));
    for (std::size_t i = 1; i < terms.size(); ++i) {
      auto next = parse_operator_node(terms.at(i));
      try {
        acc = kind == "sum" ? sum(acc, next) : compose(acc, next);
      } catch (const DomainError& e) {
        terms.at(i).fail(e.what());
      }
    }
    return acc;
  }
  if (kind == "block") {
    const Node b = spec.at("blocks");
    if (b.size() != 2 || b.at(0).size() != 2 || b.at(1).size() != 2) b.fail("expected [[A, B], [C, D]]");
    try {
      return block(parse_operator_node(b.at(0).at(0)), parse_operator_node(b.at(0).at(1)),
                   parse_operator_node(b.at(1).at(0)), parse_operator_node(b.at(1).at(1)));
    } catch (const DomainError& e) {
      b.fail(e.what());
    }
  }
  spec.at("kind").fail("unknown operator kind \"" + kind + "\"");
}

FinVec parse_coordinates(const Node& spec, std::optional<std::size_t> dim) {
  if (!spec.is_object()) spec.fail("expected an index:value map");
  std::vector<FinVec::Entry> entries;
  for (auto it = spec.raw().begin(); it != spec.raw().end(); ++it) {
    const Node value(it.value(), child(spec.path(), it.key()));
    Index idx = 0;
    const auto& key = it.key();
    if (key.empty() || !std::all_of(key.begin(), key.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      value.fail("coordinate keys must be non-negative integers");
    }
    try {
      idx = std::stoull(key);
    } catch (const std::exception&) {
      value.fail("coordinate index out of range");
    }
    if (dim && idx >= *dim) value.fail("index outside R^" + std::to_string(*dim));
    entries.emplace_back(idx, value.as_rational());
  }
  return FinVec::from_entries(std::move(entries));
}

}  // namespace

OperatorExpr parse_operator(const Node& spec) {
  try {
    return parse_operator_node(spec);
  } catch (const DomainError& e) {
    spec.fail(e.what());
  }
}

Vector parse_vector(const Node& spec, const Domain& domain) {
  switch (domain.kind) {
    case Domain::Kind::Sequence:
      return parse_coordinates(spec, std::nullopt);
    case Domain::Kind::Finite:
      return parse_coordinates(spec, domain.dim);
    case Domain::Kind::Pair: {
      if (!spec.is_object()) spec.fail("expected {\"top\": {..}, \"bottom\": {..}}");
      for (auto it = spec.raw().begin(); it != spec.raw().end(); ++it) {
        if (it.key() != "top" && it.key() != "bottom") {
          throw ConfigError(child(spec.path(), it.key()), "pair vectors only have \"top\" and \"bottom\"");
        }
      }
      PairVec v;
      if (auto t = spec.find("top")) v.top = parse_coordinates(*t, std::nullopt);
      if (auto b = spec.find("bottom")) v.bottom = parse_coordinates(*b, std::nullopt);
      return v;
    }
  }
  spec.fail("unreachable domain");
}

std::vector<Vector> parse_family(const Node& spec, const Domain& domain) {
  std::vector<Vector> out;
  if (spec.is_object() && spec.has("coordinates")) {
    const Index k = spec.at("coordinates").as_uint();
    std::string component = "both";
    if (auto c = spec.find("component")) component = c->as_string();
    if (domain.kind == Domain::Kind::Pair) {
      if (component != "both" && component != "top" && component != "bottom") {
        spec.at("component").fail("expected \"top\", \"bottom\" or \"both\"");
      }
      if (component != "bottom")
        for (Index i = 0; i <= k; ++i) out.emplace_back(PairVec{FinVec::basis(i), {}});
      if (component != "top")
        for (Index i = 0; i <= k; ++i) out.emplace_back(PairVec{{}, FinVec::basis(i)});
    } else {
      const Index last = domain.kind == Domain::Kind::Finite ? std::min<Index>(k, domain.dim - 1) : k;
      for (Index i = 0; i <= last; ++i) out.emplace_back(FinVec::basis(i));
    }
  } else {
    for (std::size_t i = 0; i < spec.size(); ++i) out.push_back(parse_vector(spec.at(i), domain));
  }
  if (out.empty()) spec.fail("functional family is empty");
  return out;
}

ZeroMode parse_zero_mode(const Node& root) {
  auto mode = root.find("mode");
  if (!mode) return ZeroMode::exact_zero();
  if (mode->is_string()) {
    if (mode->as_string() == "exact") return ZeroMode::exact_zero();
    mode->fail("expected \"exact\" or {\"epsilon\": \"p/q\"}");
  }
  const Node eps = mode->at("epsilon");
  Rational e = eps.as_rational();
  if (sgn(e) < 0) eps.fail("epsilon must be non-negative");
  return ZeroMode::within(std::move(e));
}

std::vector<Index> parse_max_gaps(const Node& root, Index fallback) {
  std::vector<Index> gaps;
  if (auto list = root.find("max_gaps")) {
    gaps = list->as_uint_list();
    if (gaps.empty()) list->fail("needs at least one gap bound");
    for (std::size_t i = 0; i < gaps.size(); ++i)
      if (gaps[i] == 0) list->at(i).fail("gap bounds must be >= 1");
  } else if (auto one = root.find("max_gap")) {
    gaps.push_back(one->as_uint());
    if (gaps.back() == 0) one->fail("gap bound must be >= 1");
  } else {
    gaps.push_back(fallback);
  }
  return gaps;
}

std::size_t parse_horizon(const Node& root, std::size_t fallback) {
  auto h = root.find("horizon");
  if (!h) return fallback;
  const auto n = h->as_uint();
  if (n == 0) h->fail("horizon must be >= 1");
  return n;
}

void apply_overrides(json& config, const Overrides& o) {
  if (!config.is_object()) throw ConfigError("", "config root must be an object");
  if (o.horizon) config["horizon"] = *o.horizon;
  if (o.max_gap) {
    config["max_gap"] = *o.max_gap;
    config.erase("max_gaps");
  }
  if (o.base) {
    if (config.contains("operator")) {
      auto& op = config["operator"];
      const std::string kind = op.is_object() && op.contains("kind") && op["kind"].is_string()
                                   ? op["kind"].get<std::string>()
                                   : "";
      if (kind != "foguel" && kind != "projection") {
        throw ConfigError("operator.kind", "--base applies only to foguel or projection operators");
      }
      op["sparse_base"] = *o.base;
      op.erase("set");
    } else {
      config["base"] = *o.base;
    }
  }
  if (o.epsilon) {
    try {
      (void)parse_rational(*o.epsilon);
    } catch (const ParseError& e) {
      throw ConfigError("--epsilon", e.what());
    }
    config["mode"] = json{{"epsilon", *o.epsilon}};
  }
  if (o.out) config["outputs"]["json"] = *o.out;
  if (o.seed) config["seed"] = *o.seed;
}

}  // namespace orbitlab::cli
