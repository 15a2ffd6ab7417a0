// qsr: command-line front end for the RCC5/RCC8 toolkit.
//
// Exit status: 0 success, 1 negative answer (inconsistent, not entailed, not
// redundant, not minimal, failed check), 2 usage or input error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qsr/bench.hpp"

using json = nlohmann::json;
using namespace qsr;

namespace {

enum Exit : int { kOk = 0, kNegative = 1, kUsage = 2 };

struct Globals {
  bool json = false;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  std::size_t guard = kDefaultGuard;
  std::string subalgebra = "auto";
  std::string out;
  bool timings = false;
};

using Clock = std::chrono::steady_clock;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << content;
}

Network read_network(const std::string& path) { return parse_network(read_file(path)); }

std::vector<Region> read_regions(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(0, path + ": " + e.what());
  }
  return regions_from_json(doc);
}

// FNV-1a over the canonical text of the inputs.
std::string digest(const std::vector<std::string>& parts) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& p : parts) {
    for (unsigned char c : p) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    h ^= 0xff;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::size_t parse_var(const std::string& s, const Network& net) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || v < 1 || v > net.size())
    throw InvalidArgument("variable index '" + s + "' must be in 1.." + std::to_string(net.size()));
  return static_cast<std::size_t>(v - 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(part);
  return out;
}

template <class T>
std::vector<T> parse_list(const std::string& s, const char* what) {
  std::vector<T> out;
  for (const auto& part : split(s, ',')) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(part, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != part.size()) throw InvalidArgument(std::string("bad ") + what + " '" + part + "'");
    out.push_back(static_cast<T>(v));
  }
  return out;
}

// "1-2,3-4": 1-based pairs.
std::vector<Edge> parse_order(const std::string& s, const Network& net) {
  std::vector<Edge> out;
  for (const auto& item : split(s, ',')) {
    const auto dash = item.find('-');
    if (dash == std::string::npos) throw InvalidArgument("order entries look like i-j, got '" + item + "'");
    out.emplace_back(parse_var(item.substr(0, dash), net), parse_var(item.substr(dash + 1), net));
  }
  return out;
}

json edges_json(const std::vector<Edge>& edges) {
  json a = json::array();
  for (auto [i, j] : edges) a.push_back({i + 1, j + 1});
  return a;
}

std::string edges_text(const std::vector<Edge>& edges) {
  std::string s;
  for (auto [i, j] : edges) s += (s.empty() ? "" : " ") + std::to_string(i + 1) + "-" + std::to_string(j + 1);
  return s.empty() ? "none" : s;
}

const Subalgebra* named_subalgebra(const std::string& name) {
  if (name == "auto") return nullptr;
  const Subalgebra* s = builtin_subalgebra(name);
  if (!s) throw InvalidArgument("unknown subalgebra '" + name + "'");
  return s;
}

class Report {
 public:
  Report(const Globals& g, std::string command, const std::vector<std::string>& inputs) : g_(g) {
    j_["schema"] = 1;
    j_["command"] = std::move(command);
    j_["input_digest"] = digest(inputs);
    j_["metrics"] = {{"constraint_checks", 0}, {"pca_updates", 0}, {"wall_ms", 0.0}};
    j_["artifacts"] = json::array();
    start_ = Clock::now();
  }
  json& operator[](const char* key) { return j_[key]; }
  void metric(const char* key, std::uint64_t v) { j_["metrics"][key] = v; }
  void outcome(const std::string& o) { j_["outcome"] = o; }

  // A produced file: written to --out when given, else printed (text mode)
  // or embedded (JSON mode).
  void artifact(const char* key, const std::string& content) {
    if (!g_.out.empty()) {
      write_file(g_.out, content);
      j_["artifacts"].push_back(g_.out);
    } else if (g_.json) {
      j_[key] = content;
    } else {
      text_ += content;
    }
  }
  void line(const std::string& s) { lines_ += s + "\n"; }

  int finish(int code) {
    if (g_.timings)
      j_["metrics"]["wall_ms"] = std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
    if (g_.json) {
      std::cout << j_.dump(2) << "\n";
    } else {
      std::cout << lines_ << text_;
      if (g_.timings) std::cout << "wall_ms " << j_["metrics"]["wall_ms"].get<double>() << "\n";
    }
    return code;
  }

 private:
  const Globals& g_;
  json j_;
  std::string lines_, text_;
  Clock::time_point start_;
};

int cmd_closure(const Globals& g, const std::string& path) {
  const Network net = read_network(path);
  Report r(g, "closure", {save_network(net)});
  const auto pc = a_closure(net);
  r.metric("constraint_checks", pc.revisions);
  r.metric("pca_updates", pc.updates);
  if (!pc.consistent) {
    r.outcome("inconsistent");
    r["witness"] = {pc.witness[0] + 1, pc.witness[1] + 1, pc.witness[2] + 1};
    r.line("inconsistent: triangle " + std::to_string(pc.witness[0] + 1) + " " +
           std::to_string(pc.witness[1] + 1) + " " + std::to_string(pc.witness[2] + 1));
    return r.finish(kNegative);
  }
  r.outcome("consistent");
  r.artifact("network", save_network(pc.network));
  return r.finish(kOk);
}

int cmd_consistent(const Globals& g, const std::string& path) {
  const Network net = read_network(path);
  Report r(g, "consistent", {save_network(net)});
  const Subalgebra* sub = named_subalgebra(g.subalgebra);
  if (sub && !over_subalgebra(net, *sub))
    throw PreconditionError("network is not over " + sub->name());
  SearchStats stats;
  bool ok;
  if (sub || over_tractable_class(net)) {
    const auto pc = a_closure(net);
    r.metric("constraint_checks", pc.revisions);
    r.metric("pca_updates", pc.updates);
    ok = pc.consistent;
    r["method"] = "path consistency";
  } else {
    ok = solve(net, g.guard, &stats).has_value();
    r["method"] = "backtracking";
  }
  r.metric("search_nodes", stats.nodes);
  r.outcome(ok ? "consistent" : "inconsistent");
  r.line(ok ? "consistent" : "inconsistent");
  return r.finish(ok ? kOk : kNegative);
}

int cmd_solve(const Globals& g, const std::string& path) {
  const Network net = read_network(path);
  Report r(g, "solve", {save_network(net)});
  SearchStats stats;
  const auto s = solve(net, g.guard, &stats);
  r.metric("search_nodes", stats.nodes);
  if (!s) {
    r.outcome("inconsistent");
    r.line("inconsistent");
    return r.finish(kNegative);
  }
  r.outcome("consistent");
  r.artifact("network", save_network(*s));
  return r.finish(kOk);
}

int cmd_entails(const Globals& g, const std::string& path, const std::string& a, const std::string& b,
                const std::string& rel) {
  const Network net = read_network(path);
  const std::size_t i = parse_var(a, net), j = parse_var(b, net);
  if (i == j) throw InvalidArgument("entails needs two distinct variables");
  const Relation q = parse_relation(net.calculus(), rel);
  Report r(g, "entails", {save_network(net), a, b, to_string(q)});
  const bool yes = entails(net, i, j, q, g.guard);
  r["query"] = {i + 1, j + 1, to_string(q)};
  r.outcome(yes ? "entailed" : "not entailed");
  r.line(yes ? "entailed" : "not entailed");
  return r.finish(yes ? kOk : kNegative);
}

int cmd_minimal(const Globals& g, const std::string& path) {
  const Network net = read_network(path);
  Report r(g, "minimal-check", {save_network(net)});
  const auto m = check_minimal(net, g.guard);
  r.outcome(m.minimal ? "minimal" : "not minimal");
  if (m.minimal) {
    r.line("minimal");
  } else {
    const auto& [e, b] = *m.infeasible;
    const auto [i, j] = e;
    const std::string name(basic_name(net.calculus(), b));
    r["infeasible"] = {i + 1, j + 1, name};
    r.line("not minimal: " + name + " on " + std::to_string(i + 1) + "-" + std::to_string(j + 1) +
           " has no solution");
  }
  return r.finish(m.minimal ? kOk : kNegative);
}

void removal_report(Report& r, const Network& net, const Network& kept, const std::string& method,
                    const std::string& sub) {
  std::vector<Edge> removed;
  for (auto [i, j] : net.constraints())
    if (kept.at(i, j).is_universal()) removed.emplace_back(i, j);
  r["removed"] = edges_json(removed);
  r["kept"] = kept.constraint_count();
  r["method"] = method;
  if (!sub.empty()) r["subalgebra"] = sub;
  r.outcome("ok");
  r.line("method " + method + (sub.empty() ? "" : " (" + sub + ")"));
  r.line("removed " + edges_text(removed));
  r.line("kept " + std::to_string(kept.constraint_count()));
}

int cmd_prime(const Globals& g, const std::string& path, const std::string& order) {
  const Network net = read_network(path);
  Report r(g, "prime", {save_network(net), order});
  const Subalgebra* sub = named_subalgebra(g.subalgebra);
  std::uint64_t checks = 0;
  Network kept;
  std::string method, sub_name;
  bool done = false;
  if (order.empty() && (!sub || sub->flags().distributive)) {
    try {
      Algorithm1Options opt;
      opt.subalgebra = sub;
      auto a1 = core_algorithm1(net, opt);
      kept = std::move(a1.core);
      checks = a1.report.checks;
      method = method_name(RedundancyMethod::Algorithm1);
      sub_name = a1.report.subalgebra;
      done = true;
    } catch (const NotDistributive& e) {
      r["fallback"] = e.what();
    } catch (const NotAllDifferent& e) {
      r["fallback"] = e.what();
    }
  }
  if (!done) {
    if (sub && !over_subalgebra(net, *sub)) throw PreconditionError("network is not over " + sub->name());
    kept = prime_iterative(net, parse_order(order, net), g.guard, &checks);
    method = method_name(over_tractable_class(net) ? RedundancyMethod::TractableSubclass
                                                   : RedundancyMethod::General);
  }
  r.metric("constraint_checks", checks);
  removal_report(r, net, kept, method, sub_name);
  r.artifact("network", save_network(kept));
  return r.finish(kOk);
}

int cmd_core(const Globals& g, const std::string& path) {
  const Network net = read_network(path);
  Report r(g, "core", {save_network(net)});
  const auto rep = redundant_constraints(net, g.guard);
  Network kept = net;
  for (auto [i, j] : rep.redundant) kept = remove_constraint(std::move(kept), i, j);
  r.metric("constraint_checks", rep.checks);
  removal_report(r, net, kept, method_name(rep.method), rep.subalgebra);
  r.artifact("network", save_network(kept));
  return r.finish(kOk);
}

int cmd_redundant(const Globals& g, const std::string& path, const std::string& a, const std::string& b) {
  const Network net = read_network(path);
  const std::size_t i = parse_var(a, net), j = parse_var(b, net);
  if (i == j) throw InvalidArgument("redundant needs two distinct variables");
  Report r(g, "redundant", {save_network(net), a, b});
  std::uint64_t checks = 0;
  const bool yes = is_redundant(net, i, j, g.guard, &checks);
  r.metric("constraint_checks", checks);
  r["query"] = {i + 1, j + 1};
  r.outcome(yes ? "redundant" : "not redundant");
  r.line(yes ? "redundant" : "not redundant");
  return r.finish(yes ? kOk : kNegative);
}

// Columns of algorithms not asked for are left empty.
void write_row(std::ostream& os, const ComparisonRow& row, const std::array<bool, 3>& on) {
  auto f = [&](int algo, auto v) {
    os << ',';
    if (on[algo]) os << v;
  };
  os << row.n << ',' << row.constraint_total;
  f(0, row.prime_kept), f(1, row.simpleext_kept), f(2, row.simple_kept);
  f(0, row.prime_checks), f(1, row.simpleext_checks), f(2, row.simple_checks);
  f(0, row.prime_ms), f(1, row.simpleext_ms), f(2, row.simple_ms);
  os << '\n';
}

int cmd_compare(const Globals& g, const std::vector<std::string>& paths, const std::string& algos) {
  std::array<bool, 3> on{};
  for (const auto& a : split(algos, ',')) {
    if (a == "prime") on[0] = true;
    else if (a == "simpleext") on[1] = true;
    else if (a == "simple") on[2] = true;
    else throw InvalidArgument("unknown algorithm '" + a + "' (prime, simpleext, simple)");
  }
  std::vector<Network> nets;
  std::vector<std::string> texts;
  for (const auto& p : paths) {
    nets.push_back(read_network(p));
    texts.push_back(save_network(nets.back()));
  }
  Report r(g, "compare", texts);
  std::vector<ComparisonRow> rows(nets.size());
  parallel_for(nets.size(), g.workers,
               [&](std::size_t k) { rows[k] = compare_one(nets[k], {g.guard, g.timings}).row; });
  std::ostringstream csv;
  csv << kComparisonCsvHeader << '\n';
  json jrows = json::array();
  bool nested = true;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    write_row(csv, rows[k], on);
    nested = nested && rows[k].nested;
    jrows.push_back({{"input", paths[k]}, {"method", method_name(rows[k].prime_method)},
                     {"nested", rows[k].nested}});
  }
  r["rows"] = jrows;
  r.outcome(nested ? "ok" : "nesting violated");
  r.artifact("csv", csv.str());
  return r.finish(kOk);
}

int cmd_subalg(const Globals& g, std::string name) {
  if (name.empty()) name = g.subalgebra;
  const Subalgebra* s = nullptr;
  if (name == "B5") s = &basic_closure(Calculus::RCC5);
  else if (name == "B8") s = &basic_closure(Calculus::RCC8);
  else if (name != "auto") s = builtin_subalgebra(name);
  if (!s) throw InvalidArgument("unknown subalgebra '" + name + "' (B5, B8, D5_14, D5_20, D8_41, D8_64, H5)");
  Report r(g, "subalg", {name});
  std::string text;
  json members = json::array();
  for (Relation m : s->members()) {
    text += to_string(m) + "\n";
    members.push_back(to_string(m));
  }
  r["name"] = s->name().empty() ? name : s->name();
  r["calculus"] = std::string(calculus_name(s->calculus()));
  r["size"] = s->size();
  r["members"] = members;
  r["distributive"] = is_distributive(*s);
  r.outcome("ok");
  if (!g.json) std::cout << text;
  return r.finish(kOk);
}

int cmd_geom2net(const Globals& g, const std::string& path) {
  const auto regions = read_regions(path);
  Report r(g, "geom2net", {regions_to_json(regions).dump()});
  const Network s = scenario_from_regions(regions);
  r["regions"] = regions.size();
  r.outcome("ok");
  r.artifact("network", save_network(s));
  return r.finish(kOk);
}

int cmd_reconstitute(const Globals& g, const std::string& prime_path, const std::string& regions_path) {
  const Network prime = read_network(prime_path);
  const auto regions = read_regions(regions_path);
  Report r(g, "reconstitute", {save_network(prime), regions_to_json(regions).dump()});
  std::size_t seeded = 0;
  Network full;
  try {
    full = hybrid_reconstitute(prime, regions, &seeded);
  } catch (const InconsistentNetwork& e) {
    r.outcome("inconsistent");
    r.line(std::string("inconsistent: ") + e.what());
    return r.finish(kNegative);
  }
  r["seeded_dc"] = seeded;
  r.outcome("ok");
  r.artifact("network", save_network(full));
  return r.finish(kOk);
}

int cmd_gen_regions(const Globals& g, std::size_t n, const std::string& profile) {
  const RegionProfile p = parse_profile(profile);
  Report r(g, "gen-regions", {std::to_string(n), std::to_string(g.seed), profile});
  const auto regions = generate_regions(n, g.seed, p);
  r.outcome("ok");
  // One region per line.
  const json doc = regions_to_json(regions);
  std::string text = "{\"regions\": [\n";
  for (std::size_t k = 0; k < doc["regions"].size(); ++k)
    text += "  " + doc["regions"][k].dump() + (k + 1 < doc["regions"].size() ? ",\n" : "\n");
  text += "]}\n";
  r.artifact("regions", text);
  return r.finish(kOk);
}

int cmd_verify_tables(const Globals& g, const std::vector<std::string>& names) {
  std::vector<Calculus> cs;
  for (const auto& n : names) cs.push_back(parse_calculus(n));
  if (cs.empty()) cs = {Calculus::RCC5, Calculus::RCC8};
  Report r(g, "verify-tables", names);
  bool all = true;
  json results = json::array();
  for (Calculus c : cs) {
    const auto rep = verify_relation_algebra(c);
    all = all && rep.pass;
    json one = {{"calculus", std::string(calculus_name(c))},
                {"pass", rep.pass},
                {"triples_checked", rep.triples_checked}};
    std::string line = std::string(calculus_name(c)) + " " + (rep.pass ? "pass" : "fail");
    if (!rep.pass) {
      json ce = json::array();
      for (Relation x : rep.counterexample) ce.push_back(to_string(x));
      one["law"] = rep.law;
      one["counterexample"] = ce;
      line += ": " + rep.law;
    }
    line += " (" + std::to_string(rep.triples_checked) + " triples)";
    r.line(line);
    results.push_back(one);
  }
  r["results"] = results;
  r.outcome(all ? "pass" : "fail");
  return r.finish(all ? kOk : kNegative);
}

struct BenchArgs {
  std::string sizes = "100,200,400";
  std::string seeds;
  std::string profiles = "nested";
  std::string calculus = "RCC8";
  double extra = 0.0;
  double drop = 0.0;
};

int cmd_bench(const Globals& g, const BenchArgs& a) {
  BenchConfig cfg;
  cfg.sizes = parse_list<std::size_t>(a.sizes, "size");
  cfg.seeds = a.seeds.empty() ? std::vector<std::uint64_t>{g.seed} : parse_list<std::uint64_t>(a.seeds, "seed");
  cfg.profiles.clear();
  for (const auto& p : split(a.profiles, ',')) cfg.profiles.push_back(parse_profile(p));
  cfg.calculus = parse_calculus(a.calculus);
  if (a.extra < 0 || a.extra > 1 || a.drop < 0 || a.drop > 1)
    throw InvalidArgument("--extra and --drop are probabilities in [0,1]");
  cfg.weaken = {a.extra, a.drop};
  cfg.subalgebra = named_subalgebra(g.subalgebra);
  if (!cfg.subalgebra && (a.extra > 0 || a.drop > 0)) cfg.subalgebra = distributive_builtins(cfg.calculus).front();
  if (cfg.subalgebra && cfg.subalgebra->calculus() != cfg.calculus)
    throw InvalidArgument(cfg.subalgebra->name() + " is not a " + std::string(calculus_name(cfg.calculus)) +
                          " subalgebra");
  for (std::size_t n : cfg.sizes)
    if (n < 2) throw InvalidArgument("bench sizes must be at least 2");
  cfg.workers = g.workers;
  cfg.timings = g.timings;

  Report r(g, "bench", {a.sizes, a.seeds.empty() ? std::to_string(g.seed) : a.seeds, a.profiles, a.calculus,
                        g.subalgebra, std::to_string(a.extra), std::to_string(a.drop)});
  const auto rows = run_bench(cfg);
  // Per-size means and the two fits.
  std::vector<double> xs, kept, checks, ms;
  json per_size = json::array();
  for (std::size_t n : cfg.sizes) {
    double k = 0, c = 0, t = 0, cnt = 0;
    for (const auto& row : rows)
      if (row.row.n == n) k += row.row.prime_kept, c += row.row.prime_checks, t += row.row.prime_ms, ++cnt;
    if (cnt == 0) continue;
    xs.push_back(double(n)), kept.push_back(k / cnt), checks.push_back(c / cnt), ms.push_back(t / cnt);
    per_size.push_back({{"n", n}, {"prime_kept", k / cnt}, {"prime_checks", c / cnt}});
  }
  json fit = json::object();
  if (xs.size() >= 2) {
    const LinearFit lf = fit_line(xs, kept);
    fit["kept_linear"] = {{"slope", lf.slope}, {"intercept", lf.intercept}, {"r2", lf.r2}};
    fit["checks_loglog_slope"] = loglog_slope(xs, checks);
    if (g.timings) fit["ms_loglog_slope"] = loglog_slope(xs, ms);
    std::ostringstream os;
    os << "fit kept = " << lf.slope << " n + " << lf.intercept << ", R^2 " << lf.r2
       << "; checks log-log slope " << loglog_slope(xs, checks);
    r.line(os.str());
  }
  r["per_size"] = per_size;
  r["fit"] = fit;
  r["instances"] = rows.size();
  r.outcome("ok");
  const std::string csv = bench_csv(rows);
  if (!g.out.empty() || g.json) {
    r.artifact("csv", csv);
    return r.finish(kOk);
  }
  // CSV on stdout, the fit on stderr.
  std::cout << csv;
  if (xs.size() >= 2) std::cerr << "fit: " << fit.dump() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Qualitative spatial reasoning with RCC5/RCC8 constraint networks"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Print a JSON report (schema 1)");
  app.add_option("--seed", g.seed, "Seed for every random choice");
  app.add_option("--workers", g.workers, "Worker threads for compare and bench")->check(CLI::PositiveNumber);
  app.add_option("--guard", g.guard, "Largest network size for exhaustive oracles");
  app.add_option("--subalgebra", g.subalgebra, "auto, D5_14, D5_20, D8_41, D8_64 or H5")
      ->check(CLI::IsMember({"auto", "D5_14", "D5_20", "D8_41", "D8_64", "H5"}));
  app.add_option("-o,--out", g.out, "Write the produced file here");
  app.add_flag("--timings", g.timings, "Measure wall time (output is then not reproducible)");

  std::string net, net2, vi, vj, rel, order, algos = "prime,simpleext,simple", name, profile = "nested";
  std::vector<std::string> nets, calcs;
  std::size_t count = 50;
  BenchArgs bench;
  std::function<int()> run;

  auto* c = app.add_subcommand("closure", "Algebraic closure of a network");
  c->add_option("network", net)->required();
  c->callback([&] { run = [&] { return cmd_closure(g, net); }; });

  c = app.add_subcommand("consistent", "Decide consistency");
  c->add_option("network", net)->required();
  c->callback([&] { run = [&] { return cmd_consistent(g, net); }; });

  c = app.add_subcommand("solve", "Print a consistent scenario");
  c->add_option("network", net)->required();
  c->callback([&] { run = [&] { return cmd_solve(g, net); }; });

  c = app.add_subcommand("entails", "Does the network entail i REL j");
  c->add_option("network", net)->required();
  c->add_option("i", vi)->required();
  c->add_option("j", vj)->required();
  c->add_option("relation", rel)->required();
  c->callback([&] { run = [&] { return cmd_entails(g, net, vi, vj, rel); }; });

  c = app.add_subcommand("minimal-check", "Is every label of the network realised by a solution");
  c->add_option("network", net)->required();
  c->callback([&] { run = [&] { return cmd_minimal(g, net); }; });

  c = app.add_subcommand("prime", "A prime subnetwork");
  c->add_option("network", net)->required();
  c->add_option("--order", order, "Removal order for the iterative procedure, e.g. 1-2,2-3");
  c->callback([&] { run = [&] { return cmd_prime(g, net, order); }; });

  c = app.add_subcommand("core", "Drop every redundant constraint");
  c->add_option("network", net)->required();
  c->callback([&] { run = [&] { return cmd_core(g, net); }; });

  c = app.add_subcommand("redundant", "Is constraint i-j redundant");
  c->add_option("network", net)->required();
  c->add_option("i", vi)->required();
  c->add_option("j", vj)->required();
  c->callback([&] { run = [&] { return cmd_redundant(g, net, vi, vj); }; });

  c = app.add_subcommand("compare", "Prime, SimpleExt and Simple side by side as CSV");
  c->add_option("networks", nets)->required();
  c->add_option("--algo", algos, "Comma-separated subset of prime,simpleext,simple");
  c->callback([&] { run = [&] { return cmd_compare(g, nets, algos); }; });

  c = app.add_subcommand("subalg", "List the members of a subalgebra");
  c->add_option("name", name, "B5, B8, D5_14, D5_20, D8_41, D8_64 or H5");
  c->callback([&] { run = [&] { return cmd_subalg(g, name); }; });

  c = app.add_subcommand("geom2net", "RCC8 scenario of a region file");
  c->add_option("regions", net)->required();
  c->callback([&] { run = [&] { return cmd_geom2net(g, net); }; });

  c = app.add_subcommand("reconstitute", "Full network from a prime network and its regions");
  c->add_option("prime", net)->required();
  c->add_option("regions", net2)->required();
  c->callback([&] { run = [&] { return cmd_reconstitute(g, net, net2); }; });

  c = app.add_subcommand("gen-regions", "Generate a region file");
  c->add_option("-n", count, "Number of regions")->check(CLI::PositiveNumber);
  c->add_option("--profile", profile, "nested, scattered or mixed");
  c->callback([&] { run = [&] { return cmd_gen_regions(g, count, profile); }; });

  c = app.add_subcommand("verify-tables", "Check the relation algebra laws exhaustively");
  c->add_option("calculus", calcs, "RCC5 and/or RCC8 (default both)");
  c->callback([&] { run = [&] { return cmd_verify_tables(g, calcs); }; });

  c = app.add_subcommand("bench", "Generated networks through all three simplifications, as CSV");
  c->add_option("--sizes", bench.sizes, "Comma-separated network sizes")->expected(0, 1);
  c->add_option("--seeds", bench.seeds, "Comma-separated seeds (default: --seed)");
  c->add_option("--profiles", bench.profiles, "Comma-separated region profiles");
  c->add_option("--calculus", bench.calculus, "RCC5 or RCC8");
  c->add_option("--extra", bench.extra, "Chance of adding each further basic when weakening");
  c->add_option("--drop", bench.drop, "Chance of dropping a constraint when weakening");
  c->callback([&] { run = [&] { return cmd_bench(g, bench); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }
  try {
    return run();
  } catch (const InconsistentNetwork& e) {
    std::cerr << "inconsistent: " << e.what() << "\n";
    return kNegative;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
