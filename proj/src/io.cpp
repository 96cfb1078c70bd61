#include "regconst/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "regconst/error.hpp"

namespace regconst {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text, std::string what) : text_(text), what_(std::move(what)) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }
  std::string word() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    if (start == pos_) error("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }
  std::uint64_t number() {
    skip_space();
    std::uint64_t value = 0;
    const auto* first = text_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(first, text_.data() + text_.size(), value);
    if (ec == std::errc::result_out_of_range) error("number out of range");
    if (ec != std::errc() || ptr == first) error("expected a non-negative integer");
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }
  // A label like o4#2.
  std::string label() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '#')) ++pos_;
    if (start == pos_) error("expected a subgroup label");
    return std::string(text_.substr(start, pos_ - start));
  }
  std::string until(std::string_view stops) {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && stops.find(text_[pos_]) == std::string_view::npos) ++pos_;
    std::size_t end = pos_;
    while (end > start && std::isspace(static_cast<unsigned char>(text_[end - 1]))) --end;
    return std::string(text_.substr(start, end - start));
  }
  std::size_t position() const { return pos_; }

  [[noreturn]] void error(const std::string& message) const {
    fail(ErrorCategory::syntax, what_ + " at position " + std::to_string(pos_) + ": " + message);
  }

 private:
  std::string_view text_;
  std::string what_;
  std::size_t pos_ = 0;
};

std::vector<std::uint64_t> number_list(Cursor& in) {
  std::vector<std::uint64_t> out{in.number()};
  while (in.accept(',')) out.push_back(in.number());
  return out;
}

void require_args(Cursor& in, const std::string& kind, const std::vector<std::uint64_t>& args, std::size_t count) {
  if (args.size() != count)
    in.error(kind + " takes " + std::to_string(count) + " argument" + (count == 1 ? "" : "s") + ", got " +
             std::to_string(args.size()));
}

GroupPtr parse_perm_group(Cursor& in, std::size_t budget) {
  in.expect('[');
  std::vector<std::vector<std::vector<std::uint64_t>>> gens;  // generator -> cycles
  std::uint64_t degree = 0;
  do {
    std::vector<std::vector<std::uint64_t>> cycles;
    while (in.peek() == '(') {
      in.expect('(');
      auto cycle = number_list(in);
      in.expect(')');
      for (auto x : cycle) {
        if (x >= 4096) in.error("point " + std::to_string(x) + " is too large");
        degree = std::max<std::uint64_t>(degree, x + 1);
      }
      cycles.push_back(std::move(cycle));
    }
    if (cycles.empty()) in.error("expected a cycle");
    gens.push_back(std::move(cycles));
  } while (in.accept(','));
  in.expect(']');
  std::vector<Permutation> perms;
  for (const auto& cycles : gens) {
    Permutation p(degree);
    for (std::uint64_t i = 0; i < degree; ++i) p[i] = static_cast<std::uint32_t>(i);
    std::vector<bool> used(degree, false);
    for (const auto& cycle : cycles) {
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        if (used[cycle[i]]) fail(ErrorCategory::validation, "point " + std::to_string(cycle[i]) + " repeated in a generator");
        used[cycle[i]] = true;
        p[cycle[i]] = static_cast<std::uint32_t>(cycle[(i + 1) % cycle.size()]);
      }
    }
    perms.push_back(std::move(p));
  }
  return group_from_generators(perms, budget);
}

GroupPtr parse_factor(Cursor& in, std::size_t budget) {
  const std::size_t start = in.position();
  const std::string kind = in.word();
  if (kind == "q8" || kind == "quaternion8") return quaternion8_group();
  in.expect(':');
  if (kind == "perm") return parse_perm_group(in, budget);
  const auto args = number_list(in);
  if (kind == "cyclic" || kind == "C") {
    require_args(in, kind, args, 1);
    if (args[0] == 0) fail(ErrorCategory::validation, "cyclic group order must be positive");
    if (args[0] > kMaxGroupOrder) fail(ErrorCategory::resource, "group order " + std::to_string(args[0]) + " exceeds " + std::to_string(kMaxGroupOrder));
    return cyclic_group(args[0]);
  }
  if (kind == "elemab") {
    require_args(in, kind, args, 2);
    return elementary_abelian_group(args[0], args[1]);
  }
  if (kind == "dihedral") {
    require_args(in, kind, args, 1);
    if (args[0] > kMaxGroupOrder) fail(ErrorCategory::resource, "group order " + std::to_string(args[0]) + " exceeds " + std::to_string(kMaxGroupOrder));
    return dihedral_group(args[0]);
  }
  if (kind == "heisenberg") {
    require_args(in, kind, args, 1);
    return heisenberg_group(args[0]);
  }
  if (kind == "symmetric") {
    require_args(in, kind, args, 1);
    if (args[0] > 5) fail(ErrorCategory::resource, "symmetric group on " + std::to_string(args[0]) + " points exceeds order " + std::to_string(kMaxGroupOrder));
    return symmetric_group(args[0]);
  }
  if (kind == "semidirect") {
    require_args(in, kind, args, 3);
    if (args[0] == 0 || args[1] == 0) fail(ErrorCategory::validation, "semidirect factors must have positive order");
    if (args[0] * args[1] > kMaxGroupOrder) fail(ErrorCategory::resource, "group order " + std::to_string(args[0] * args[1]) + " exceeds " + std::to_string(kMaxGroupOrder));
    return metacyclic_group(args[0], args[1], args[2]);
  }
  fail(ErrorCategory::validation, "unsupported group kind '" + kind + "' at position " + std::to_string(start));
}

}  // namespace

GroupPtr parse_group_spec(std::string_view text, std::size_t element_budget) {
  Cursor in(text, "group spec");
  if (in.done()) in.error("empty group spec");
  GroupPtr g = parse_factor(in, element_budget);
  while (in.accept('*')) {
    GroupPtr h = parse_factor(in, element_budget);
    if (g->order() * h->order() > kMaxGroupOrder)
      fail(ErrorCategory::resource, "group order " + std::to_string(g->order() * h->order()) + " exceeds " + std::to_string(kMaxGroupOrder));
    g = direct_product(*g, *h);
  }
  if (!in.done()) in.error("unexpected trailing input");
  return g;
}

std::size_t element_budget_from_env() {
  const char* raw = std::getenv("REGCONST_ELEMENT_BUDGET");
  if (raw == nullptr || *raw == '\0') return kDefaultElementBudget;
  std::size_t value = 0;
  const std::string_view text(raw);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value == 0)
    fail(ErrorCategory::usage, "REGCONST_ELEMENT_BUDGET must be a positive integer");
  return value;
}

std::size_t resolve_label(const GroupStructure& structure, std::string_view label) {
  if (auto cls = structure.find_label(label)) return *cls;
  std::string valid;
  for (const auto& c : structure.classes()) valid += (valid.empty() ? "" : ", ") + c.label;
  fail(ErrorCategory::validation, "unknown subgroup label '" + std::string(label) + "'; valid labels: " + valid);
}

namespace {

GLattice parse_lattice_sum(Cursor& in, const StructurePtr& s);

GLattice parse_lattice_atom(Cursor& in, const StructurePtr& s) {
  if (in.accept('(')) {
    GLattice inner = parse_lattice_sum(in, s);
    in.expect(')');
    return inner;
  }
  const std::string name = in.word();
  if (name == "A") return cyclic_quotient_lattice(s);
  if (name == "I") return augmentation_lattice(s);
  if (name == "Z") return trivial_lattice(s);
  if (name == "Reg") return regular_lattice(s);
  if (name == "Coset") {
    in.expect('(');
    const std::string label = in.label();
    in.expect(')');
    return coset_lattice(s, resolve_label(*s, label));
  }
  if (name == "Tower") {
    in.expect('(');
    const std::uint64_t m = in.number();
    in.expect(')');
    if (m > 64) fail(ErrorCategory::resource, "tower multiplicity " + std::to_string(m) + " is too large");
    return tower_target_lattice(s, m);
  }
  if (name == "Sum") {
    in.expect('(');
    GLattice acc = parse_lattice_sum(in, s);
    while (in.accept(',')) acc = direct_sum(acc, parse_lattice_sum(in, s));
    in.expect(')');
    return acc;
  }
  in.error("unknown lattice '" + name + "'");
}

GLattice parse_lattice_power(Cursor& in, const StructurePtr& s) {
  GLattice base = parse_lattice_atom(in, s);
  if (in.accept('^')) {
    const std::uint64_t m = in.number();
    if (m > 64) fail(ErrorCategory::resource, "direct power " + std::to_string(m) + " is too large");
    return direct_power(base, m);
  }
  return base;
}

GLattice parse_lattice_sum(Cursor& in, const StructurePtr& s) {
  GLattice acc = parse_lattice_power(in, s);
  while (in.accept('+')) acc = direct_sum(acc, parse_lattice_power(in, s));
  return acc;
}

std::string compact(std::string_view text) {
  std::string out;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

}  // namespace

GLattice parse_lattice_expr(std::string_view text, const StructurePtr& structure) {
  Cursor in(text, "lattice expression");
  if (in.done()) in.error("empty lattice expression");
  GLattice lattice = parse_lattice_sum(in, structure);
  if (!in.done()) in.error("unexpected trailing input");
  return GLattice(structure, std::vector<IntMatrix>(lattice.generator_actions().begin(), lattice.generator_actions().end()),
                  compact(text));
}

GRelation parse_relation(std::string_view text, const StructurePtr& structure) {
  Cursor in(text, "relation");
  GRelation rel = GRelation::zero(structure);
  if (in.done()) return rel;
  do {
    const std::string label = in.label();
    in.expect(':');
    const bool negative = in.accept('-');
    if (!negative) in.accept('+');
    const std::uint64_t n = in.number();
    if (n > static_cast<std::uint64_t>(INT32_MAX)) in.error("coefficient too large");
    rel.add(resolve_label(*structure, label), negative ? -static_cast<std::int64_t>(n) : static_cast<std::int64_t>(n));
  } while (in.accept(','));
  if (!in.done()) in.error("unexpected trailing input");
  return rel;
}

std::map<std::size_t, Rational> parse_label_values(std::string_view text, const StructurePtr& structure) {
  Cursor in(text, "value list");
  std::map<std::size_t, Rational> out;
  if (in.done()) return out;
  do {
    const std::string label = in.label();
    in.expect(':');
    const std::string value = in.until(",");
    const std::size_t cls = resolve_label(*structure, label);
    if (out.count(cls)) fail(ErrorCategory::validation, "label " + label + " given twice");
    out[cls] = parse_rational(value);
  } while (in.accept(','));
  if (!in.done()) in.error("unexpected trailing input");
  return out;
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  Cursor in(text, "rational list");
  std::vector<Rational> out;
  if (in.done()) return out;
  do {
    out.push_back(parse_rational(in.until(",")));
  } while (in.accept(','));
  return out;
}

namespace {

Integer json_integer(const Json& v, const std::string& field) {
  if (v.is_number_unsigned()) return Integer(std::to_string(v.get<std::uint64_t>()));
  if (v.is_number_integer()) return Integer(std::to_string(v.get<std::int64_t>()));
  if (v.is_string()) {
    const Rational q = parse_rational(v.get<std::string>());
    if (q.get_den() != 1) fail(ErrorCategory::data, "field " + field + " must be an integer");
    return q.get_num();
  }
  fail(ErrorCategory::data, "field " + field + " must be an integer");
}

Rational json_rational(const Json& v, const std::string& field) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(json_integer(v, field));
  fail(ErrorCategory::data, "field " + field + " must be a \"num/den\" string");
}

}  // namespace

ArithmeticProfile parse_profile(const Json& doc, std::size_t element_budget) {
  if (!doc.is_object()) fail(ErrorCategory::data, "profile must be a JSON object");
  for (const auto& [key, value] : doc.items())
    if (key != "group" && key != "p" && key != "classes" && key != "totally_real" && key != "odd_degree")
      fail(ErrorCategory::data, "unknown field '" + key + "'");
  if (!doc.contains("group") || !doc["group"].is_string()) fail(ErrorCategory::data, "field group must be a group spec string");
  auto structure = analyse(parse_group_spec(doc["group"].get<std::string>(), element_budget));

  std::optional<std::uint64_t> p;
  if (doc.contains("p") && !doc["p"].is_null()) {
    if (!doc["p"].is_number_unsigned()) fail(ErrorCategory::data, "field p must be a positive integer");
    p = doc["p"].get<std::uint64_t>();
  }
  const auto flag = [&](const char* name) {
    if (!doc.contains(name)) return false;
    if (!doc[name].is_boolean()) fail(ErrorCategory::data, std::string("field ") + name + " must be a boolean");
    return doc[name].get<bool>();
  };

  std::vector<ClassInvariants> classes(structure->classes().size());
  std::vector<bool> seen(classes.size(), false);
  if (doc.contains("classes")) {
    if (!doc["classes"].is_array()) fail(ErrorCategory::data, "field classes must be an array");
    std::size_t i = 0;
    for (const auto& entry : doc["classes"]) {
      const std::string where = "classes[" + std::to_string(i++) + "]";
      if (!entry.is_object()) fail(ErrorCategory::data, where + " must be an object");
      if (!entry.contains("label") || !entry["label"].is_string()) fail(ErrorCategory::data, where + ".label missing");
      const std::size_t cls = resolve_label(*structure, entry["label"].get<std::string>());
      if (seen[cls]) fail(ErrorCategory::data, where + ": label " + entry["label"].get<std::string>() + " listed twice");
      seen[cls] = true;
      auto& inv = classes[cls];
      for (const auto& [key, value] : entry.items()) {
        const std::string field = where + "." + key;
        if (key == "label") continue;
        if (value.is_null()) continue;
        if (key == "h") inv.h = json_integer(value, field);
        else if (key == "h_p") inv.h_p = json_integer(value, field);
        else if (key == "w") inv.w = json_integer(value, field);
        else if (key == "lambda") inv.lambda = json_integer(value, field);
        else if (key == "R") inv.R = json_rational(value, field);
        else fail(ErrorCategory::data, "unknown field " + field);
      }
    }
  }
  return ArithmeticProfile(structure, std::move(classes), p, flag("totally_real"), flag("odd_degree"));
}

ArithmeticProfile load_profile(const std::string& path, std::size_t element_budget) {
  std::ifstream file(path);
  if (!file) fail(ErrorCategory::io, "cannot open " + path);
  Json doc;
  try {
    doc = Json::parse(file);
  } catch (const Json::parse_error& e) {
    std::string what = e.what();
    std::replace(what.begin(), what.end(), '\n', ' ');
    fail(ErrorCategory::syntax, path + ": " + what);
  }
  return parse_profile(doc, element_budget);
}

std::string format_relation(const GRelation& relation) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [cls, n] : relation.support()) {
    const std::string& label = relation.structure().subgroup_class(cls).label;
    const std::int64_t a = n < 0 ? -n : n;
    if (first) os << (n < 0 ? "-" : "");
    else os << (n < 0 ? " - " : " + ");
    if (a != 1) os << a << "*";
    os << label;
    first = false;
  }
  return first ? "0" : os.str();
}

Json relation_to_json(const GRelation& relation) {
  Json terms = Json::array();
  for (const auto& [cls, n] : relation.support())
    terms.push_back({{"class", relation.structure().subgroup_class(cls).label}, {"coeff", n}});
  return terms;
}

GRelation relation_from_json(const Json& terms, const StructurePtr& structure) {
  if (!terms.is_array()) fail(ErrorCategory::data, "relation must be an array of {class, coeff}");
  GRelation rel = GRelation::zero(structure);
  for (const auto& t : terms) {
    if (!t.is_object() || !t.contains("class") || !t.contains("coeff") || !t["class"].is_string() ||
        !t["coeff"].is_number_integer())
      fail(ErrorCategory::data, "relation term must be {\"class\": label, \"coeff\": n}");
    rel.add(resolve_label(*structure, t["class"].get<std::string>()), t["coeff"].get<std::int64_t>());
  }
  return rel;
}

Json regulator_to_json(const RegulatorValue& value) {
  Json vals = Json::object();
  for (const auto& [p, e] : value.valuations) vals[p.get_str()] = e;
  return {{"value", to_string(value.value)}, {"valuations", vals}};
}

Json verdict_to_json(const Verdict& verdict) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < verdict.residuals.size(); ++i)
    rows.push_back({{"residual", to_string(verdict.residuals[i])}, {"explanation", verdict.explanations[i]}});
  return {{"overall", verdict.overall}, {"relations", rows}};
}

Json subgroup_classes_to_json(const GroupStructure& structure) {
  Json out = Json::array();
  for (const auto& c : structure.classes()) {
    out.push_back({{"label", c.label},
                   {"order", c.order},
                   {"class_size", c.class_size},
                   {"cyclic", c.is_cyclic},
                   {"normal", c.is_normal()},
                   {"representative", c.representative}});
  }
  return out;
}

}  // namespace regconst
