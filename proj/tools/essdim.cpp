// Command-line front end. Every command prints one JSON document on stdout.
// Exit codes: 0 success, 2 input or internal error, 3 out of scope.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "essdim/abelian.hpp"
#include "essdim/chartab.hpp"
#include "essdim/edim.hpp"
#include "essdim/error.hpp"
#include "essdim/field.hpp"
#include "essdim/io.hpp"
#include "essdim/mhom.hpp"
#include "essdim/repdim.hpp"

using namespace essdim;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Options {
  std::string group;
  std::string field = "Q";
  std::string facts;
  std::string subgroups;
  bool full = false;
  bool pretty = false;
  std::string cache_dir;
  bool no_cache = false;
  std::string lambda;
  std::uint64_t budget = kPathCBudget;
  std::string path = "auto";
  std::string file, file2;
  std::string source_blocks, target_blocks;
  std::uint64_t seed = 1;
};

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::OutOfScope:
    case ErrorKind::NotSemiFaithful:
    case ErrorKind::HypothesisFailed:
    case ErrorKind::BackendLimit:
    case ErrorKind::SearchBudgetExceeded:
    case ErrorKind::ClosureTooLarge:
      return 3;
    default:
      return 2;
  }
}

void emit(const json& j, bool pretty) { std::cout << (pretty ? j.dump(2) : j.dump()) << "\n"; }

int report_error(const std::string& kind, const std::string& detail, int code) {
  std::cout << json{{"error", kind}, {"detail", detail}}.dump() << "\n";
  return code;
}

// A file if one exists at the path, otherwise a group name.
FiniteGroup load_group(const std::string& arg) {
  if (fs::exists(arg)) return load_group_file(arg);
  if (arg.find('/') != std::string::npos || arg.ends_with(".json"))
    fail(ErrorKind::InputError, "cannot open group file " + arg);
  return named_group(arg);
}

std::string cache_dir(const Options& o) {
  if (o.no_cache) return "";
  if (!o.cache_dir.empty()) return o.cache_dir;
  if (const char* env = std::getenv("ESSDIM_CACHE_DIR")) return env;
  return "";
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InputError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::InputError, "malformed JSON in " + path + ": " + e.what());
  }
}

json subgroup_json(const Subgroup& h) {
  json j{{"order", h.order()}, {"abelian", h.is_abelian()}};
  if (h.is_abelian() && !h.is_trivial()) j["invariant_factors"] = structure(h).divisors();
  return j;
}

// --------------------------------------------------------------- commands

json cmd_invariants(const FiniteGroup& g, const FieldDescriptor& f) {
  json feet = json::array();
  for (const auto& m : g.feet()) feet.push_back(subgroup_json(m));
  bool semi = is_semi_faithful(g, f);
  json j{{"group", g.label()},
         {"order", g.order()},
         {"fingerprint", g.invariant_fingerprint()},
         {"field", f.canonical()},
         {"abelian", g.is_abelian()},
         {"exponent", g.exponent()},
         {"classes", g.conjugacy_classes().size()},
         {"center", subgroup_json(g.center())},
         {"commutator_subgroup", subgroup_json(g.commutator_subgroup())},
         {"socle", subgroup_json(g.socle())},
         {"socle_abelian", subgroup_json(g.socle_abelian())},
         {"feet", feet},
         {"k_center", subgroup_json(k_center(g, f))},
         {"k_center_rank", k_center_rank(g, f)},
         {"semi_faithful", semi},
         {"splitting", supports_splitting(g, f)}};
  if (semi) j["min_components"] = min_components(g, f);
  return j;
}

json cmd_chartab(const FiniteGroup& g, const std::string& dir) {
  auto t = character_table(g, dir);
  t.verify_rows();
  json rows = json::array();
  for (std::size_t i = 0; i < t.size(); ++i) {
    json r = json::array();
    for (std::size_t c = 0; c < t.class_sizes().size(); ++c) r.push_back(t.value(i, c).to_string());
    rows.push_back(r);
  }
  json reps = json::array();
  for (auto e : t.class_reps()) reps.push_back(g.element_order(e));
  return {{"group", g.label()},   {"order", g.order()},        {"degrees", t.degrees()},
          {"class_sizes", t.class_sizes()}, {"class_rep_orders", reps}, {"values", rows},
          {"origin", t.origin()}};
}

std::string render_chartab(const json& j) {
  std::ostringstream os;
  os << j["group"].get<std::string>() << " (order " << j["order"] << ")\n";
  os << "class sizes: " << j["class_sizes"].dump() << "\n";
  std::size_t i = 0;
  for (const auto& r : j["values"]) {
    os << "X." << ++i << "\t";
    for (const auto& v : r) os << v.get<std::string>() << "\t";
    os << "\n";
  }
  return os.str();
}

json cmd_rdim(const FiniteGroup& g, const FieldDescriptor& f, const Options& o) {
  RdimPath p = RdimPath::Auto;
  if (o.path == "A") p = RdimPath::A;
  else if (o.path == "B") p = RdimPath::B;
  else if (o.path == "C") p = RdimPath::C;
  else if (o.path != "auto") fail(ErrorKind::InputError, "path must be auto, A, B or C");
  auto w = rdim(g, f, p, o.budget);
  return {{"group", g.label()},
          {"field", f.canonical()},
          {"rdim", w.value},
          {"dimension_vector", w.dimension_vector},
          {"component_rows", w.component_rows},
          {"path", w.path}};
}

EdimOptions edim_options(const FiniteGroup& g, const Options& o) {
  EdimOptions eo;
  eo.full_subgroups = o.full;
  if (!o.subgroups.empty()) {
    // [[element, ...], ...]: generators of each subgroup
    for (const auto& sub : read_json(o.subgroups)) {
      std::vector<Elem> gens;
      for (const auto& e : sub) gens.push_back(element_from_json(g, e));
      eo.subgroups.push_back(gens);
    }
  }
  return eo;
}

FactStore load_facts(const Options& o) {
  return o.facts.empty() ? FactStore{} : FactStore::load(o.facts);
}

std::string render_edim(const json& j) {
  std::ostringstream os;
  os << j["group"].get<std::string>() << " over " << j["field"].get<std::string>() << ": ["
     << j["lower"] << ", " << (j["upper"].is_null() ? "?" : j["upper"].dump()) << "]"
     << (j["exact"].get<bool>() ? " exact" : "") << "\n";
  for (const auto& t : j["trace"])
    os << "  " << t["rule"].get<std::string>() << (t["tightened"].get<bool>() ? " * " : "   ")
       << "[" << t["lower"] << ", " << (t["upper"].is_null() ? "?" : t["upper"].dump()) << "]  "
       << t["citation"].get<std::string>() << "\n";
  return os.str();
}

std::vector<long> parse_lambda(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      fail(ErrorKind::InputError, "bad --lambda entry '" + tok + "'");
    }
  }
  return out;
}

json degree_matrix_json(const DegreeMatrix& m) {
  return {{"entries", m.entries}, {"zero_columns", m.zero_columns}};
}

json cmd_homogenize(const Options& o) {
  auto c = load_covariant(o.file);
  std::optional<OneParamSubgroup> l;
  if (!o.lambda.empty()) l = OneParamSubgroup{parse_lambda(o.lambda)};
  auto h = homogenize(c.map, l);
  return {{"H", h.map.to_json()},
          {"M", degree_matrix_json(h.matrix)},
          {"rank", matrix_rank(h.matrix.entries)},
          {"lambda", h.lambda.weights}};
}

json cmd_rank_bound(const Options& o, const FieldDescriptor& f) {
  auto c = load_covariant(o.file);
  if (c.gens_v.empty()) fail(ErrorKind::InputError, "covariant file has no action");
  auto r = rank_bound_check(c.map, f, c.gens_v, c.gens_w, o.seed);
  json j = r.to_json();
  j["field"] = f.canonical();
  return j;
}

Grading parse_blocks(const std::string& s) {
  // "x1,x2;y" -> [[x1,x2],[y]]
  Grading g;
  std::stringstream ss(s);
  std::string block;
  while (std::getline(ss, block, ';')) {
    std::vector<std::string> names;
    std::stringstream bs(block);
    std::string n;
    while (std::getline(bs, n, ',')) names.push_back(n);
    g.blocks.push_back(names);
  }
  return g;
}

json cmd_refine(const Options& o) {
  auto c = load_covariant(o.file);
  std::optional<Grading> src, tgt;
  if (!o.source_blocks.empty()) src = parse_blocks(o.source_blocks);
  if (!o.target_blocks.empty()) tgt = parse_blocks(o.target_blocks);
  auto r = refine(c.map, src, tgt);
  return {{"map", r.map.to_json()},
          {"M", degree_matrix_json(r.matrix)},
          {"rank_before", r.rank_before},
          {"rank_after", r.rank_after}};
}

json cmd_facts_merge(const Options& o) {
  FactStore store;
  if (fs::exists(o.file)) store = FactStore::load(o.file);
  store.merge(FactStore::load(o.file2));
  json out = store.to_json();
  std::string tmp = o.file + ".tmp";
  {
    std::ofstream f(tmp);
    if (!f) fail(ErrorKind::InputError, "cannot write " + tmp);
    f << out.dump(2) << "\n";
  }
  fs::rename(tmp, o.file);
  return {{"store", o.file}, {"facts", out}};
}

json cmd_cache(const std::string& action, const Options& o) {
  std::string dir = cache_dir(o);
  if (dir.empty()) fail(ErrorKind::InputError, "no cache directory: use --cache-dir or ESSDIM_CACHE_DIR");
  json files = json::array();
  if (action == "warm") {
    auto g = load_group(o.group);
    auto t = character_table(g, dir);
    return {{"cache_dir", dir}, {"group", g.label()}, {"fingerprint", g.fingerprint()},
            {"origin", t.origin()}};
  }
  if (fs::is_directory(dir)) {
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(dir)) {
      auto n = e.path().filename().string();
      if (n.starts_with("chartab-") && n.ends_with(".json")) names.push_back(n);
    }
    std::sort(names.begin(), names.end());
    for (const auto& n : names) {
      if (action == "clear") fs::remove(fs::path(dir) / n);
      files.push_back(n);
    }
  }
  return {{"cache_dir", dir}, {action == "clear" ? "removed" : "entries", files}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Essential dimension bounds for finite groups"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* c, bool group) {
    if (group) c->add_option("group", o.group, "group file (JSON) or group name")->required();
    c->add_option("--field", o.field, "Q | Q(zeta_m) | algclosed:c | char=p;zeta=n1,...");
    c->add_flag("--pretty", o.pretty, "human-readable output");
    c->add_option("--cache-dir", o.cache_dir, "character-table cache (env ESSDIM_CACHE_DIR)");
    c->add_flag("--no-cache", o.no_cache, "disable the character-table cache");
  };

  auto* inv = app.add_subcommand("invariants", "socle, feet, centres and flags");
  add_common(inv, true);
  auto* ct = app.add_subcommand("chartab", "character table");
  add_common(ct, true);
  auto* rd = app.add_subcommand("rdim", "minimal faithful representation dimension");
  add_common(rd, true);
  rd->add_option("--path", o.path, "auto, A, B or C");
  rd->add_option("--budget", o.budget, "node budget of the kernel search");
  CLI::App* ed[2];
  const char* edn[2] = {"edim", "covdim"};
  for (int i = 0; i < 2; ++i) {
    ed[i] = app.add_subcommand(edn[i], i ? "covariant dimension bounds" : "essential dimension bounds");
    add_common(ed[i], true);
    ed[i]->add_option("--facts", o.facts, "facts file");
    ed[i]->add_option("--subgroups", o.subgroups, "JSON list of subgroup generator lists");
    ed[i]->add_flag("--full", o.full, "search all subgroups, not only cyclic ones");
  }

  auto* mh = app.add_subcommand("mhom", "multihomogenization of covariants");
  mh->require_subcommand(1);
  auto* mh_h = mh->add_subcommand("homogenize", "H_lambda and its degree matrix");
  mh_h->add_option("file", o.file, "covariant file")->required();
  mh_h->add_option("--lambda", o.lambda, "one-parameter subgroup v1,v2,...");
  mh_h->add_flag("--pretty", o.pretty);
  auto* mh_r = mh->add_subcommand("rank-bound", "rank check and probabilistic upper bound");
  mh_r->add_option("file", o.file, "covariant file with an action")->required();
  mh_r->add_option("--field", o.field);
  mh_r->add_option("--seed", o.seed, "random point seed");
  mh_r->add_flag("--pretty", o.pretty);
  auto* mh_f = mh->add_subcommand("refine", "refine gradings and recompute the degree matrix");
  mh_f->add_option("file", o.file, "covariant file")->required();
  mh_f->add_option("--source", o.source_blocks, "finer source blocks, e.g. x1;x2,x3");
  mh_f->add_option("--target", o.target_blocks, "finer target blocks");
  mh_f->add_flag("--pretty", o.pretty);

  auto* fa = app.add_subcommand("facts", "facts store");
  fa->require_subcommand(1);
  auto* fa_m = fa->add_subcommand("merge", "merge a facts file into a store");
  fa_m->add_option("store", o.file)->required();
  fa_m->add_option("new", o.file2)->required();
  fa_m->add_flag("--pretty", o.pretty);
  auto* fa_s = fa->add_subcommand("show", "print a facts file with groups resolved");
  fa_s->add_option("file", o.file)->required();
  fa_s->add_flag("--pretty", o.pretty);

  auto* ca = app.add_subcommand("cache", "character-table cache");
  ca->require_subcommand(1);
  auto* ca_l = ca->add_subcommand("list", "list cached tables");
  auto* ca_c = ca->add_subcommand("clear", "remove cached tables");
  auto* ca_w = ca->add_subcommand("warm", "compute and store a table");
  ca_w->add_option("group", o.group)->required();
  for (auto* c : {ca_l, ca_c, ca_w}) {
    c->add_option("--cache-dir", o.cache_dir);
    c->add_flag("--pretty", o.pretty);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("UsageError", e.what(), 2);
  }

  try {
    TableSource::global().cache_dir = cache_dir(o);
    if (inv->parsed() || ct->parsed() || rd->parsed() || ed[0]->parsed() || ed[1]->parsed()) {
      auto f = parse_field(o.field);
      auto g = load_group(o.group);
      if (inv->parsed()) {
        emit(cmd_invariants(g, f), o.pretty);
      } else if (ct->parsed()) {
        auto j = cmd_chartab(g, cache_dir(o));
        if (o.pretty) std::cout << render_chartab(j);
        else emit(j, false);
      } else if (rd->parsed()) {
        emit(cmd_rdim(g, f, o), o.pretty);
      } else {
        auto facts = load_facts(o);
        auto eo = edim_options(g, o);
        auto r = ed[0]->parsed() ? edim(g, f, facts, eo) : covdim(g, f, facts, eo);
        auto j = r.to_json();
        if (o.pretty) std::cout << render_edim(j);
        else emit(j, false);
      }
    } else if (mh_h->parsed()) {
      emit(cmd_homogenize(o), o.pretty);
    } else if (mh_r->parsed()) {
      emit(cmd_rank_bound(o, parse_field(o.field)), o.pretty);
    } else if (mh_f->parsed()) {
      emit(cmd_refine(o), o.pretty);
    } else if (fa_m->parsed()) {
      emit(cmd_facts_merge(o), o.pretty);
    } else if (fa_s->parsed()) {
      emit(FactStore::load(o.file).to_json(), o.pretty);
    } else if (ca_l->parsed()) {
      emit(cmd_cache("list", o), o.pretty);
    } else if (ca_c->parsed()) {
      emit(cmd_cache("clear", o), o.pretty);
    } else if (ca_w->parsed()) {
      emit(cmd_cache("warm", o), o.pretty);
    }
  } catch (const Error& e) {
    return report_error(to_string(e.kind()), e.detail(), exit_code(e.kind()));
  } catch (const json::exception& e) {
    return report_error("InputError", e.what(), 2);
  } catch (const fs::filesystem_error& e) {
    return report_error("InputError", e.what(), 2);
  } catch (const std::exception& e) {
    return report_error("InternalInconsistency", e.what(), 2);
  }
  return 0;
}
