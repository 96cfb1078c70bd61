#include "regconst/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "regconst/error.hpp"
#include "regconst/io.hpp"

namespace regconst {

namespace {

struct Options {
  bool json = false;
  std::string spec;
  std::string lattice;
  std::vector<std::string> relations;
  bool all = false;
  std::uint64_t p = 0;
  std::string values;
  std::string characters;
  bool order_function = false;
  std::string profile;
  std::string candidate;
  bool p_part = false;
  bool bouc = false;
  std::int64_t scale = 1;
  std::string into;
  std::string embed;
};

class Output {
 public:
  Output(std::ostream& out, bool json, const std::string& command) : out_(out), json_(json) {
    doc_["command"] = command;
  }
  Json& doc() { return doc_; }
  std::ostringstream& text() { return text_; }
  void flush() {
    if (json_) out_ << doc_.dump(2) << "\n";
    else out_ << text_.str();
  }

 private:
  std::ostream& out_;
  bool json_;
  Json doc_;
  std::ostringstream text_;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::vector<GRelation> selected_relations(const Options& o, const StructurePtr& s) {
  if (o.relations.empty()) return relation_basis(s);
  std::vector<GRelation> out;
  for (const auto& text : o.relations) {
    GRelation rel = parse_relation(text, s);
    if (!is_relation(rel)) fail(ErrorCategory::validation, "'" + text + "' is not a relation of " + s->group().description());
    out.push_back(std::move(rel));
  }
  return out;
}

std::uint64_t infer_prime(const Group& g, std::uint64_t requested) {
  if (requested != 0) {
    if (!is_prime(requested)) fail(ErrorCategory::validation, std::to_string(requested) + " is not prime");
    if (!g.is_p_group(requested))
      fail(ErrorCategory::validation, g.description() + " is not a " + std::to_string(requested) + "-group");
    return requested;
  }
  if (g.order() > 1) {
    for (std::uint64_t p = 2; p <= g.order(); ++p)
      if (g.order() % p == 0) {
        if (g.is_p_group(p)) return p;
        break;
      }
  }
  fail(ErrorCategory::validation, g.description() + " is not a p-group");
}

std::optional<std::uint64_t> prime_of(const Group& g) {
  if (g.order() <= 1) return std::nullopt;
  for (std::uint64_t p = 2; p <= g.order(); ++p)
    if (g.order() % p == 0) return g.is_p_group(p) ? std::optional(p) : std::nullopt;
  return std::nullopt;
}

StructurePtr load_structure(const std::string& spec) { return analyse(parse_group_spec(spec, element_budget_from_env())); }

Json bouc_to_json(const BoucGenerator& gen, const GroupStructure& s) {
  return {{"type", gen.source.type ? to_string(*gen.source.type) : std::string("?")},
          {"h", s.subgroup_class(gen.source.h_class).label},
          {"b_order", gen.source.b.size()},
          {"b", gen.source.b},
          {"quotient_relation", relation_to_json(gen.quotient_relation)},
          {"relation", relation_to_json(gen.relation)}};
}

std::string bouc_line(const BoucGenerator& gen, const GroupStructure& s) {
  std::ostringstream os;
  os << (gen.source.type ? to_string(*gen.source.type) : std::string("?")) << " H=" << s.subgroup_class(gen.source.h_class).label
     << " |B|=" << gen.source.b.size() << ": " << format_relation(gen.relation);
  return os.str();
}

int cmd_group(const Options& o, std::ostream& out) {
  const auto s = load_structure(o.spec);
  const Group& g = s->group();
  Output r(out, o.json, "group");
  r.doc()["spec"] = o.spec;
  r.doc()["description"] = g.description();
  r.doc()["order"] = g.order();
  r.doc()["abelian"] = g.is_abelian();
  r.doc()["exponent"] = g.exponent();
  r.doc()["element_classes"] = s->element_classes().size();
  r.doc()["subgroup_count"] = s->subgroup_count();
  r.doc()["subgroup_classes"] = subgroup_classes_to_json(*s);
  auto& t = r.text();
  t << "group " << g.description() << "\n"
    << "order " << g.order() << ", exponent " << g.exponent() << ", abelian " << yes_no(g.is_abelian()) << "\n"
    << s->element_classes().size() << " element classes, " << s->subgroup_count() << " subgroups in "
    << s->classes().size() << " classes\n";
  t << std::left << std::setw(8) << "label" << std::setw(7) << "order" << std::setw(6) << "size" << std::setw(8) << "cyclic"
    << "normal\n";
  for (const auto& c : s->classes())
    t << std::setw(8) << c.label << std::setw(7) << c.order << std::setw(6) << c.class_size << std::setw(8)
      << yes_no(c.is_cyclic) << yes_no(c.is_normal()) << "\n";
  r.flush();
  return kExitTrue;
}

int cmd_relations(const Options& o, std::ostream& out) {
  const auto s = load_structure(o.spec);
  const auto basis = relation_basis(s);
  Output r(out, o.json, "relations");
  r.doc()["spec"] = o.spec;
  r.doc()["description"] = s->group().description();
  Json rows = Json::array();
  for (const auto& rel : basis) rows.push_back(relation_to_json(rel));
  r.doc()["basis"] = rows;
  auto& t = r.text();
  t << "relation basis of " << s->group().description() << " (rank " << basis.size() << ")\n";
  for (std::size_t i = 0; i < basis.size(); ++i) t << "  [" << i + 1 << "] " << format_relation(basis[i]) << "\n";
  if (const auto p = prime_of(s->group())) {
    const auto gens = bouc_generators(s, *p);
    std::vector<GRelation> lifted;
    Json bj = Json::array();
    for (const auto& gen : gens) {
      lifted.push_back(gen.relation);
      bj.push_back(bouc_to_json(gen, *s));
    }
    const bool same = same_lattice(lifted, basis);
    r.doc()["p"] = *p;
    r.doc()["bouc"] = bj;
    r.doc()["bouc_spans_basis"] = same;
    t << "Bouc generators for p = " << *p << " (" << gens.size() << ")\n";
    for (std::size_t i = 0; i < gens.size(); ++i) t << "  [" << i + 1 << "] " << bouc_line(gens[i], *s) << "\n";
    t << "span equals relation lattice: " << yes_no(same) << "\n";
  }
  r.flush();
  return kExitTrue;
}

int cmd_bouc(const Options& o, std::ostream& out) {
  const auto s = load_structure(o.spec);
  const std::uint64_t p = infer_prime(s->group(), o.p);
  const auto gens = bouc_generators(s, p);
  const auto basis = relation_basis(s);
  std::vector<GRelation> lifted;
  Json bj = Json::array();
  for (const auto& gen : gens) {
    lifted.push_back(gen.relation);
    bj.push_back(bouc_to_json(gen, *s));
  }
  const bool same = same_lattice(lifted, basis);
  Output r(out, o.json, "bouc");
  r.doc()["spec"] = o.spec;
  r.doc()["p"] = p;
  r.doc()["generators"] = bj;
  r.doc()["spans_basis"] = same;
  auto& t = r.text();
  t << "Bouc generators of " << s->group().description() << " for p = " << p << " (" << gens.size() << ")\n";
  for (std::size_t i = 0; i < gens.size(); ++i) t << "  [" << i + 1 << "] " << bouc_line(gens[i], *s) << "\n";
  t << "span equals relation lattice: " << yes_no(same) << "\n";
  r.flush();
  return same ? kExitTrue : kExitFalse;
}

int cmd_regconst(const Options& o, std::ostream& out) {
  const auto s = load_structure(o.spec);
  if (o.all && !o.relations.empty()) fail(ErrorCategory::usage, "--all and --relation are mutually exclusive");
  const GLattice lattice = parse_lattice_expr(o.lattice, s);
  const auto rels = selected_relations(o, s);
  Output r(out, o.json, "regconst");
  r.doc()["spec"] = o.spec;
  r.doc()["lattice"] = lattice.label();
  r.doc()["rank"] = lattice.rank();
  Json rows = Json::array();
  auto& t = r.text();
  t << "regulator constants of " << lattice.label() << " (rank " << lattice.rank() << ") over "
    << s->group().description() << "\n";
  if (rels.empty()) t << "  no relations\n";
  for (const auto& rel : rels) {
    const auto value = regulator_constant(lattice, rel);
    Json row = regulator_to_json(value);
    row["relation"] = relation_to_json(rel);
    rows.push_back(row);
    t << "  " << format_relation(rel) << "  ->  " << to_string(value.value);
    for (const auto& [p, e] : value.valuations) t << "  v_" << p.get_str() << "=" << e;
    t << "\n";
  }
  r.doc()["results"] = rows;
  r.flush();
  return kExitTrue;
}

int cmd_factorizable(const Options& o, std::ostream& out) {
  const int sources = !o.values.empty() + !o.characters.empty() + o.order_function;
  if (sources != 1) fail(ErrorCategory::usage, "give exactly one of --values, --characters, --order");
  const auto s = load_structure(o.spec);
  std::optional<SubgroupFunction> f;
  if (o.order_function) {
    f = SubgroupFunction::order_function(s);
  } else if (!o.characters.empty()) {
    const auto values = parse_rational_list(o.characters);
    f = function_from_character_data(s, values);
  } else {
    const auto given = parse_label_values(o.values, s);
    std::vector<Rational> values;
    std::string missing;
    for (std::size_t c = 0; c < s->classes().size(); ++c) {
      auto it = given.find(c);
      if (it == given.end()) missing += (missing.empty() ? "" : ", ") + s->subgroup_class(c).label;
      else values.push_back(it->second);
    }
    if (!missing.empty()) fail(ErrorCategory::validation, "no value for subgroups " + missing);
    f.emplace(s, std::move(values));
  }
  const auto q = factorisable_quotient(*f);
  const auto dq = dual_factorisable_quotient(*f);
  const bool ok = is_factorisable_abelian(*f);
  Output r(out, o.json, "factorizable");
  r.doc()["spec"] = o.spec;
  Json rows = Json::array();
  auto& t = r.text();
  t << std::left << std::setw(8) << "label" << std::setw(14) << "f" << std::setw(14) << "f~" << "dual f~\n";
  for (std::size_t c = 0; c < s->classes().size(); ++c) {
    rows.push_back({{"class", s->subgroup_class(c).label}, {"f", to_string((*f)[c])}, {"quotient", to_string(q[c])},
                    {"dual_quotient", to_string(dq[c])}});
    t << std::setw(8) << s->subgroup_class(c).label << std::setw(14) << to_string((*f)[c]) << std::setw(14)
      << to_string(q[c]) << to_string(dq[c]) << "\n";
  }
  r.doc()["values"] = rows;
  r.doc()["factorisable"] = ok;
  t << "factorisable: " << yes_no(ok) << "\n";
  r.flush();
  return ok ? kExitTrue : kExitFalse;
}

GLattice candidate_lattice(const std::string& text, const StructurePtr& s) {
  if (text.empty() || text == "A") return cyclic_quotient_lattice(s);
  if (text.rfind("tower:", 0) == 0) {
    const std::string m = text.substr(6);
    return parse_lattice_expr("Tower(" + m + ")", s);
  }
  return parse_lattice_expr(text, s);
}

void render_verdict(Output& r, const std::string& name, const Verdict& v, const std::vector<GRelation>& rels) {
  Json j = verdict_to_json(v);
  for (std::size_t i = 0; i < rels.size(); ++i) j["relations"][i]["relation"] = relation_to_json(rels[i]);
  r.doc()[name] = j;
  auto& t = r.text();
  t << name << ": " << (v.overall ? "true" : "false") << "\n";
  for (std::size_t i = 0; i < v.residuals.size(); ++i)
    t << "  [" << i + 1 << "] residual " << to_string(v.residuals[i]) << "  (" << v.explanations[i] << ")\n";
}

int cmd_check_units(const Options& o, std::ostream& out) {
  const auto profile = load_profile(o.profile, element_budget_from_env());
  const auto& s = profile.structure_ptr();
  const auto rels = relation_basis(s);
  Output r(out, o.json, "check-units");
  r.doc()["profile"] = o.profile;
  r.doc()["group"] = s->group().description();
  bool overall = true;
  if (o.bouc) {
    const auto p = infer_prime(s->group(), profile.prime().value_or(0));
    if (!profile.prime()) fail(ErrorCategory::data, "Bouc condition check needs a declared prime p");
    const auto gens = bouc_generators(s, p);
    std::vector<GRelation> lifted;
    for (const auto& g : gens) lifted.push_back(g.relation);
    const Verdict v = bouc_condition_check(profile, gens);
    render_verdict(r, "bouc_condition", v, lifted);
    overall = v.overall;
  } else if (o.p_part) {
    const GLattice cand = candidate_lattice(o.candidate, s);
    r.doc()["candidate"] = o.candidate.empty() ? "A" : o.candidate;
    const Verdict v = p_part_factor_check(profile, rels, cand);
    render_verdict(r, "p_part_factor", v, rels);
    overall = v.overall;
  } else if (!o.candidate.empty()) {
    const GLattice cand = candidate_lattice(o.candidate, s);
    r.doc()["candidate"] = o.candidate;
    const Verdict v = lattice_factor_check(profile, rels, cand);
    render_verdict(r, "lattice_factor", v, rels);
    overall = v.overall;
  } else {
    const Verdict v = minkowski_factor_check(profile, rels);
    render_verdict(r, "minkowski_factor", v, rels);
    overall = v.overall;
  }
  r.doc()["overall"] = overall;
  r.flush();
  return overall ? kExitTrue : kExitFalse;
}

int cmd_bk_check(const Options& o, std::ostream& out) {
  const auto profile = load_profile(o.profile, element_budget_from_env());
  const auto rels = relation_basis(profile.structure_ptr());
  Output r(out, o.json, "bk-check");
  r.doc()["profile"] = o.profile;
  Json rows = Json::array();
  bool ok = true;
  auto& t = r.text();
  t << "Brauer-Kuroda residuals for " << profile.structure().group().description() << "\n";
  for (const auto& rel : rels) {
    const Rational res = brauer_kuroda_residual(profile, rel);
    ok = ok && res == 1;
    rows.push_back({{"relation", relation_to_json(rel)}, {"residual", to_string(res)}});
    t << "  " << format_relation(rel) << "  ->  " << to_string(res) << "\n";
  }
  r.doc()["results"] = rows;
  r.doc()["overall"] = ok;
  t << "consistent: " << yes_no(ok) << "\n";
  r.flush();
  return ok ? kExitTrue : kExitFalse;
}

IntMatrix load_matrix(const std::string& path) {
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
  if (doc.is_object() && doc.contains("matrix")) doc = doc["matrix"];
  if (!doc.is_array() || doc.empty() || !doc[0].is_array()) fail(ErrorCategory::data, path + ": expected a matrix");
  IntMatrix m(doc.size(), doc[0].size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    if (!doc[i].is_array() || doc[i].size() != m.cols()) fail(ErrorCategory::data, path + ": ragged matrix");
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!doc[i][j].is_number_integer()) fail(ErrorCategory::data, path + ": matrix entries must be integers");
      m(i, j) = static_cast<long>(doc[i][j].get<std::int64_t>());
    }
  }
  return m;
}

int cmd_index_check(const Options& o, std::ostream& out) {
  const auto s = load_structure(o.spec);
  const GLattice m = parse_lattice_expr(o.lattice, s);
  const GLattice n = o.into.empty() ? m : parse_lattice_expr(o.into, s);
  IntMatrix embed;
  if (!o.embed.empty()) {
    if (o.scale != 1) fail(ErrorCategory::usage, "--scale and --embed are mutually exclusive");
    embed = load_matrix(o.embed);
  } else {
    if (!o.into.empty()) fail(ErrorCategory::usage, "--into needs --embed");
    if (o.scale == 0) fail(ErrorCategory::validation, "scale 0 is not injective");
    embed = IntMatrix::identity(m.rank());
    for (std::size_t i = 0; i < m.rank(); ++i) embed(i, i) = static_cast<long>(o.scale);
  }
  const auto rels = selected_relations(o, s);
  Output r(out, o.json, "index-check");
  r.doc()["spec"] = o.spec;
  r.doc()["source"] = m.label();
  r.doc()["target"] = n.label();
  Json rows = Json::array();
  bool ok = true;
  auto& t = r.text();
  t << "index check " << m.label() << " -> " << n.label() << " over " << s->group().description() << "\n";
  if (rels.empty()) t << "  no relations\n";
  for (const auto& rel : rels) {
    const auto res = index_ratio_check(m, n, embed, rel);
    ok = ok && res.holds;
    Json idx = Json::object();
    for (const auto& [cls, coeff] : rel.support()) idx[s->subgroup_class(cls).label] = res.indices[cls].get_str();
    rows.push_back({{"relation", relation_to_json(rel)},
                    {"indices", idx},
                    {"constant_ratio", to_string(res.constant_ratio)},
                    {"index_product", to_string(res.index_product)},
                    {"holds", res.holds}});
    t << "  " << format_relation(rel) << "  C(M)/C(N) = " << to_string(res.constant_ratio)
      << ", index product = " << to_string(res.index_product) << "  " << (res.holds ? "ok" : "MISMATCH") << "\n";
  }
  r.doc()["results"] = rows;
  r.doc()["overall"] = ok;
  r.flush();
  return ok ? kExitTrue : kExitFalse;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Regulator constants, G-relations and unit lattice checks for finite groups", "regconst"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.json, "Emit JSON instead of text");

  auto* group = app.add_subcommand("group", "Describe a group and its subgroup classes");
  group->add_option("spec", o.spec, "Group spec")->required();

  auto* relations = app.add_subcommand("relations", "Relation basis, plus Bouc generators for p-groups");
  relations->add_option("spec", o.spec, "Group spec")->required();

  auto* regconst = app.add_subcommand("regconst", "Regulator constants of a lattice");
  regconst->add_option("spec", o.spec, "Group spec")->required();
  regconst->add_option("lattice", o.lattice, "Lattice expression")->required();
  regconst->add_option("--relation", o.relations, "Relation as label:n,... (repeatable)");
  regconst->add_flag("--all", o.all, "Every basis relation (default)");

  auto* bouc = app.add_subcommand("bouc", "Bouc generators of a p-group and the span check");
  bouc->add_option("spec", o.spec, "Group spec")->required();
  bouc->add_option("--p", o.p, "Prime (inferred from the order if omitted)");

  auto* fact = app.add_subcommand("factorizable", "Factorisable quotient of a subgroup function on an abelian group");
  fact->add_option("spec", o.spec, "Group spec")->required();
  fact->add_option("--values", o.values, "Values as label:q,...");
  fact->add_option("--characters", o.characters, "One positive rational per character");
  fact->add_flag("--order", o.order_function, "Use f(H) = |H|");

  auto* units = app.add_subcommand("check-units", "Factor equivalence checks from a profile");
  units->add_option("profile", o.profile, "Profile JSON")->required();
  units->add_option("--candidate", o.candidate, "A, tower:m or a lattice expression");
  units->add_flag("--p-part", o.p_part, "Compare p-adic valuations only");
  units->add_flag("--bouc", o.bouc, "Bouc condition on h_p");

  auto* bk = app.add_subcommand("bk-check", "Brauer-Kuroda residuals of a profile");
  bk->add_option("profile", o.profile, "Profile JSON")->required();

  auto* index = app.add_subcommand("index-check", "Index formula for an embedding of lattices");
  index->add_option("spec", o.spec, "Group spec")->required();
  index->add_option("lattice", o.lattice, "Source lattice expression")->required();
  index->add_option("--scale", o.scale, "Embed by k times the identity");
  index->add_option("--into", o.into, "Target lattice expression");
  index->add_option("--embed", o.embed, "Embedding matrix JSON (rank N x rank M)");
  index->add_option("--relation", o.relations, "Relation as label:n,... (repeatable)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kExitTrue;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitTrue;
  } catch (const CLI::ParseError& e) {
    std::string what = e.what();
    std::replace(what.begin(), what.end(), '\n', ' ');
    err << "error:usage: " << what << "\n";
    return kExitError;
  }

  try {
    if (group->parsed()) return cmd_group(o, out);
    if (relations->parsed()) return cmd_relations(o, out);
    if (regconst->parsed()) return cmd_regconst(o, out);
    if (bouc->parsed()) return cmd_bouc(o, out);
    if (fact->parsed()) return cmd_factorizable(o, out);
    if (units->parsed()) return cmd_check_units(o, out);
    if (bk->parsed()) return cmd_bk_check(o, out);
    if (index->parsed()) return cmd_index_check(o, out);
  } catch (const Error& e) {
    std::string what = e.what();
    std::replace(what.begin(), what.end(), '\n', ' ');
    err << "error:" << category_name(e.category()) << ": " << what << "\n";
    return kExitError;
  } catch (const std::bad_alloc&) {
    err << "error:resource: out of memory\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::string what = e.what();
    std::replace(what.begin(), what.end(), '\n', ' ');
    err << "error:internal: " << what << "\n";
    return kExitError;
  }
  err << "error:usage: no subcommand\n";
  return kExitError;
}

}  // namespace regconst
