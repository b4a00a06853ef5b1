#include "experiments.hpp"

#include <chrono>
#include <random>
#include <sstream>

#include "reclab/errors.hpp"
#include "reclab/returnset.hpp"

namespace reclab::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(trim(tok));
  if (out.empty()) out.push_back("");
  return out;
}

TorusScalar build_scalar(const std::string& text) {
  if (text.rfind("cf:", 0) == 0) return TorusScalar::from_cf(parse_cf(text.substr(3)));
  try {
    return TorusScalar::rational(parse_rat(text));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("bad scalar '") + text + "': " + e.what());
  }
}

std::string scalar_str(const TorusScalar& t) {
  return t.str();
}

}  // namespace

std::string point_str(const SystemPoint& p) {
  if (p.is_residue()) return std::to_string(p.residue_value());
  if (p.is_torus()) {
    std::string out;
    for (std::size_t i = 0; i < p.coords().size(); ++i)
      out += (i ? "," : "") + scalar_str(p.coords()[i]);
    return out;
  }
  std::string out;
  for (std::size_t i = 0; i < p.parts().size(); ++i)
    out += (i ? " | " : "") + point_str(p.parts()[i]);
  return out;
}

SequenceSpec build_sequence(const std::string& text) {
  if (text.rfind("super-lacunary:", 0) == 0) {
    auto v = parse_int_list(text.substr(15));
    if (v.size() != 3) throw ConfigError("super-lacunary needs seed,slack,count");
    return make_super_lacunary(v[0], v[1], static_cast<int>(v[2]));
  }
  if (text.rfind("geometric:", 0) == 0) {
    auto v = parse_int_list(text.substr(10));
    if (v.size() != 3) throw ConfigError("geometric needs first,ratio,count");
    return SequenceSpec::geometric(v[0], v[1], static_cast<int>(v[2]));
  }
  auto terms = parse_int_list(text);
  if (terms.empty()) throw ConfigError("empty sequence: " + text);
  return SequenceSpec::explicit_terms(std::move(terms));
}

SystemSpec build_system(const ConfigNode& node) {
  const std::string& kind = node.get("kind");
  if (kind == "rotation") return SystemSpec::rotation(build_scalar(node.get("alpha")));
  if (kind == "weyl")
    return SystemSpec::weyl_affine(static_cast<int>(parse_int(node.get("depth"))),
                                   build_scalar(node.get("alpha")));
  if (kind == "cyclic")
    return SystemSpec::cyclic(parse_int(node.get("modulus")), parse_int(node.get("step")));
  if (kind == "sturmian")
    return SystemSpec::sturmian(build_scalar(node.get("alpha")),
                                build_scalar(node.get("base")));
  if (kind == "product") {
    std::vector<SystemSpec> parts;
    for (int i = 0;; ++i) {
      std::string name = "part" + std::to_string(i);
      if (!node.has_child(name)) break;
      parts.push_back(build_system(node.child(name)));
    }
    if (parts.empty()) throw ConfigError("product system needs [..partN] sections");
    return SystemSpec::product(std::move(parts));
  }
  throw ConfigError("unknown system kind: " + kind);
}

namespace {

SystemPoint build_point_parts(const SystemSpec& sys,
                              std::vector<std::string>::const_iterator& it,
                              std::vector<std::string>::const_iterator end) {
  return std::visit(
      [&](const auto& s) -> SystemPoint {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ProductSpec>) {
          std::vector<SystemPoint> parts;
          for (const auto& part : s.parts) parts.push_back(build_point_parts(part, it, end));
          return SystemPoint::tuple(std::move(parts));
        } else {
          if (it == end) throw ConfigError("point has too few components");
          std::string text = *it++;
          if constexpr (std::is_same_v<T, CyclicSpec>) {
            return SystemPoint::residue(parse_int(text));
          } else {
            std::vector<TorusScalar> coords;
            for (const auto& c : split(text, ','))
              coords.push_back(build_scalar(c));
            return SystemPoint::torus(std::move(coords));
          }
        }
      },
      sys.v());
}

}  // namespace

SystemPoint build_point(const SystemSpec& sys, const std::string& text) {
  auto parts = split(text, '|');
  auto it = parts.cbegin();
  SystemPoint p = build_point_parts(sys, it, parts.cend());
  if (it != parts.cend()) throw ConfigError("point has too many components: " + text);
  validate_point(sys, p);
  return p;
}

Neighborhood build_neighborhood(const SystemSpec& sys, const ConfigNode& node) {
  const std::string& kind = node.get("kind");
  if (kind == "ball")
    return Neighborhood::ball(build_point(sys, node.get("center")),
                              parse_rat(node.get("eps")));
  if (kind == "cylinder")
    return Neighborhood::cylinder(build_point(sys, node.get("center")),
                                  parse_int(node.get("radius")));
  if (kind == "subset") {
    auto residues = parse_int_list(node.get("residues"));
    std::sort(residues.begin(), residues.end());
    return Neighborhood::subset(std::move(residues));
  }
  throw ConfigError("unknown neighborhood kind: " + kind);
}

SetDescriptor build_descriptor(const ConfigNode& node) {
  const std::string& kind = node.get("kind");
  if (kind == "ap")
    return SetDescriptor::ap(parse_int(node.get("modulus")), parse_int(node.get("residue")));
  if (kind == "fs") return SetDescriptor::fs(build_sequence(node.get("p")));
  if (kind == "sg")
    return SetDescriptor::sg(build_sequence(node.get("p")),
                             static_cast<int>(parse_int(node.get("d"))));
  if (kind == "explicit") {
    auto [lo, hi] = parse_range(node.get("window"));
    return SetDescriptor::explicit_set(
        IntegerWindow::from_values(lo, hi, parse_int_list(node.get("members"))));
  }
  if (kind == "delta") {
    auto [lo, hi] = parse_range(node.get("source_window"));
    return SetDescriptor::delta(build_descriptor(node.child("inner")), lo, hi);
  }
  if (kind == "union" || kind == "intersection") {
    std::vector<SetDescriptor> parts;
    for (int i = 0;; ++i) {
      std::string name = "part" + std::to_string(i);
      if (!node.has_child(name)) break;
      parts.push_back(build_descriptor(node.child(name)));
    }
    if (parts.empty()) throw ConfigError(kind + " needs [..partN] sections");
    return kind == "union" ? SetDescriptor::union_of(std::move(parts))
                           : SetDescriptor::intersection_of(std::move(parts));
  }
  if (kind == "return-set") {
    SystemSpec sys = build_system(node.child("system"));
    SystemPoint x = build_point(sys, node.child("x").get("point"));
    Neighborhood u = build_neighborhood(sys, node.child("neighborhood"));
    return SetDescriptor::return_set_of(std::move(sys), std::move(x), std::move(u));
  }
  throw ConfigError("unknown set kind: " + kind);
}

FiniteMeasureSystem build_fms(const ConfigNode& node) {
  FiniteMeasureSystem fms(parse_int(node.get("modulus")), parse_int(node.get("step")));
  const ConfigNode& sets = node.child("sets");
  for (const auto& [name, residues] : sets.values)
    fms.add_set(name, parse_int_list(residues));
  return fms;
}

SearchBudget build_budget(const ConfigNode& node) {
  SearchBudget b;
  auto [lo, hi] = parse_range(node.get("window"));
  b.lo = lo;
  b.hi = hi;
  if (node.has("max_nodes")) b.max_nodes = parse_int(node.get("max_nodes"));
  if (node.has("max_candidates"))
    b.max_candidates_per_level = parse_int(node.get("max_candidates"));
  return b;
}

WitnessOptions build_options(const ConfigNode& node) {
  WitnessOptions o;
  if (node.has("allow_zero")) o.allow_zero = parse_bool(node.get("allow_zero"));
  if (node.has("allow_negative")) o.allow_negative = parse_bool(node.get("allow_negative"));
  if (node.has("allow_repeats")) o.allow_repeats = parse_bool(node.get("allow_repeats"));
  if (node.has("distinct_sums"))
    o.require_distinct_sums = parse_bool(node.get("distinct_sums"));
  if (node.has("gaps_in_target"))
    o.require_gaps_in_target = parse_bool(node.get("gaps_in_target"));
  return o;
}

Json config_to_json(const ConfigNode& node) {
  Json j = Json::object();
  for (const auto& [k, v] : node.values) {
    if (node.children.contains(k))
      throw ConfigError("name used for both key and section: " + k);
    j[k] = v;
  }
  for (const auto& [k, c] : node.children) j[k] = config_to_json(c);
  return j;
}

ConfigNode config_from_json(const Json& j) {
  ConfigNode node;
  for (const auto& [k, v] : j.items()) {
    if (v.is_string())
      node.values[k] = v.get<std::string>();
    else if (v.is_object())
      node.children[k] = config_from_json(v);
    else
      throw ConfigError("config echo holds a non-string value at " + k);
  }
  return node;
}

std::string canonical_hash(const Json& report_core) {
  std::string dump = report_core.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

Json j_window(const IntegerWindow& w) {
  Json j;
  j["lo"] = w.lo();
  j["hi"] = w.hi();
  j["count"] = static_cast<std::int64_t>(w.size());
  j["members"] = w.members();
  return j;
}

Json j_options(const WitnessOptions& o) {
  Json j;
  j["allow_zero"] = o.allow_zero;
  j["allow_negative"] = o.allow_negative;
  j["allow_repeats"] = o.allow_repeats;
  j["distinct_sums"] = o.require_distinct_sums;
  j["gaps_in_target"] = o.require_gaps_in_target;
  return j;
}

Json j_witness(const FSWitness& w) {
  Json j;
  j["entries"] = w.entries;
  j["sums"] = w.sums;
  if (w.base) j["base"] = *w.base;
  else j["base"] = nullptr;
  j["options"] = j_options(w.options);
  return j;
}

Json j_stats(const SearchStats& s) {
  Json j;
  j["nodes"] = s.nodes;
  j["candidates"] = s.candidates;
  j["exhausted"] = s.exhausted ? Json(to_string(*s.exhausted)) : Json(nullptr);
  return j;
}

Json j_triple_result(const TripleSearchResult& r) {
  Json j;
  if (r.triple) {
    Json t;
    t["a1"] = r.triple->a1;
    t["a2"] = r.triple->a2;
    t["a3"] = r.triple->a3;
    t["label"] = r.triple->label;
    j["triple"] = t;
  } else {
    j["triple"] = nullptr;
  }
  j["truncated"] = r.truncated;
  j["degenerate"] = r.degenerate;
  j["checked"] = r.checked;
  j["node_limited"] = r.node_limited;
  return j;
}

FSWitness witness_from_json(const Json& j) {
  FSWitness w;
  w.entries = j.at("entries").get<std::vector<std::int64_t>>();
  w.sums = j.at("sums").get<std::vector<std::int64_t>>();
  if (!j.at("base").is_null()) w.base = j.at("base").get<std::int64_t>();
  return w;
}

std::vector<SystemPoint> build_grid(const SystemSpec& sys, const ConfigNode& grid,
                                    std::uint64_t seed) {
  std::vector<SystemPoint> out;
  for (int i = 0;; ++i) {
    std::string name = "point" + std::to_string(i);
    if (!grid.has(name)) break;
    out.push_back(build_point(sys, grid.get(name)));
  }
  if (grid.has("random_count")) {
    // deterministic rational grid: coordinates k/65536 drawn from the seed
    std::int64_t count = parse_int(grid.get("random_count"));
    std::mt19937_64 rng(seed);
    const auto* weyl = std::get_if<WeylAffineSpec>(&sys.v());
    const auto* rot = std::get_if<RotationSpec>(&sys.v());
    if (!weyl && !rot)
      throw ConfigError("random grids are only drawn on rotation/weyl systems");
    int depth = weyl ? weyl->depth : 1;
    for (std::int64_t i = 0; i < count; ++i) {
      std::vector<TorusScalar> coords;
      for (int c = 0; c < depth; ++c)
        coords.push_back(TorusScalar::rational(
            make_rat(static_cast<std::int64_t>(rng() % 65536), 65536)));
      out.push_back(SystemPoint::torus(std::move(coords)));
    }
  }
  if (out.empty()) throw ConfigError("empty grid");
  return out;
}

struct KindRun {
  Json outcome;
  bool witness_missing = false;
};

KindRun run_kind(const std::string& kind, const ConfigNode& config, int threads) {
  KindRun out;
  if (kind == "gen-set") {
    auto [lo, hi] = parse_range(config.get("window"));
    auto w = eval_window(build_descriptor(config.child("set")), lo, hi, threads);
    out.witness_missing = w.empty();
    out.outcome["window"] = j_window(w);
    return out;
  }
  if (kind == "return-set") {
    SystemSpec sys = build_system(config.child("system"));
    SystemPoint x = build_point(sys, config.child("x").get("point"));
    Neighborhood u = build_neighborhood(sys, config.child("neighborhood"));
    auto [lo, hi] = parse_range(config.get("window"));
    auto rs = return_set(sys, x, u, lo, hi, threads);
    out.witness_missing = rs.definite.empty();
    out.outcome["definite"] = j_window(rs.definite);
    out.outcome["boundary"] = rs.boundary;
    return out;
  }
  if (kind == "fs-witness") {
    auto budget = build_budget(config.child("budget"));
    auto target = eval_window(build_descriptor(config.child("target")), budget.lo,
                              budget.hi, threads);
    auto res = find_fs_witness(target, static_cast<int>(parse_int(config.get("d"))),
                               budget, build_options(config));
    out.witness_missing = !res.found();
    out.outcome["witness"] = res.found() ? j_witness(*res.witness) : Json(nullptr);
    out.outcome["stats"] = j_stats(res.stats);
    out.outcome["target_size"] = static_cast<std::int64_t>(target.size());
    return out;
  }
  if (kind == "rp-witness") {
    SystemSpec sys = build_system(config.child("system"));
    SystemPoint x = build_point(sys, config.child("x").get("point"));
    SystemPoint y = build_point(sys, config.child("y").get("point"));
    auto budget = build_budget(config.child("budget"));
    auto res = rp_witness(sys, x, y, static_cast<int>(parse_int(config.get("d"))),
                          parse_rat(config.get("eps")), budget, build_options(config),
                          threads);
    out.witness_missing = !res.search.found();
    out.outcome["witness"] =
        res.search.found() ? j_witness(*res.search.witness) : Json(nullptr);
    out.outcome["stats"] = j_stats(res.search.stats);
    out.outcome["target_size"] = res.target_size;
    out.outcome["boundary_count"] = res.boundary_count;
    return out;
  }
  if (kind == "sg-containment") {
    auto [lo, hi] = parse_range(config.get("window"));
    auto res = check_sg_containment(build_sequence(config.get("p")),
                                    static_cast<int>(parse_int(config.get("d"))),
                                    build_descriptor(config.child("target")), lo, hi,
                                    threads);
    const char* status =
        res.status == SgContainmentResult::Status::Contained ? "contained"
        : res.status == SgContainmentResult::Status::Counterexample ? "counterexample"
                                                                    : "window-truncated";
    out.witness_missing = res.status != SgContainmentResult::Status::Contained;
    out.outcome["status"] = status;
    out.outcome["counterexample"] =
        res.counterexample ? Json(*res.counterexample) : Json(nullptr);
    out.outcome["out_of_window"] = res.out_of_window;
    out.outcome["checked"] = res.checked;
    return out;
  }
  if (kind == "intersective") {
    auto budget = build_budget(config.child("budget"));
    auto p = eval_window(build_descriptor(config.child("p")), budget.lo, budget.hi,
                         threads);
    auto f = eval_window(build_descriptor(config.child("f")), budget.lo, budget.hi,
                         threads);
    auto res = intersective_witness(p, f, static_cast<int>(parse_int(config.get("d"))),
                                    budget, build_options(config));
    out.witness_missing = !res.found();
    out.outcome["witness"] = res.found() ? j_witness(*res.witness) : Json(nullptr);
    out.outcome["stats"] = j_stats(res.stats);
    return out;
  }
  if (kind == "poincare-d") {
    auto fms = build_fms(config.child("fms"));
    auto budget = build_budget(config.child("budget"));
    auto p = eval_window(build_descriptor(config.child("p")), budget.lo, budget.hi,
                         threads);
    auto res = poincare_order_witness(p, fms, config.get("set"),
                                      static_cast<int>(parse_int(config.get("d"))),
                                      budget, build_options(config));
    out.witness_missing = !res.search.found();
    out.outcome["witness"] =
        res.search.found() ? j_witness(*res.search.witness) : Json(nullptr);
    out.outcome["stats"] = j_stats(res.search.stats);
    out.outcome["measure"] = res.measure ? Json(rat_str(*res.measure)) : Json(nullptr);
    return out;
  }
  if (kind == "birkhoff-d") {
    auto fms = build_fms(config.child("fms"));
    auto budget = build_budget(config.child("budget"));
    auto p = eval_window(build_descriptor(config.child("p")), budget.lo, budget.hi,
                         threads);
    auto res = birkhoff_order_witness(p, fms, config.get("open_set"),
                                      static_cast<int>(parse_int(config.get("d"))),
                                      budget, build_options(config));
    out.witness_missing = !res.search.found();
    out.outcome["witness"] =
        res.search.found() ? j_witness(*res.search.witness) : Json(nullptr);
    out.outcome["stats"] = j_stats(res.search.stats);
    out.outcome["intersection_size"] = res.intersection_size;
    return out;
  }
  if (kind == "pigeonhole") {
    auto fms = build_fms(config.child("fms"));
    auto names_raw = split(config.get("sets"), ',');
    std::vector<std::string> names(names_raw.begin(), names_raw.end());
    std::string mode = config.get_or("mode", "exhaustive");
    out.outcome["mode"] = mode;
    if (mode == "exhaustive") {
      auto res = pigeonhole_select(fms, names,
                                   static_cast<int>(parse_int(config.get("k"))),
                                   parse_rat(config.get("eps")));
      out.witness_missing = !res.selection.has_value();
      if (res.selection) {
        Json sel;
        sel["indices"] = res.selection->indices;
        sel["measure"] = rat_str(res.selection->measure);
        sel["min_measure"] = rat_str(res.selection->min_measure);
        sel["threshold"] = rat_str(res.selection->threshold);
        out.outcome["selection"] = sel;
      } else {
        out.outcome["selection"] = nullptr;
        out.outcome["min_measure"] = rat_str(res.min_measure);
        out.outcome["threshold"] = rat_str(res.threshold);
      }
      out.outcome["nodes"] = res.nodes;
      return out;
    }
    if (mode == "iterative") {
      const ConfigNode& rounds_node = config.child("rounds");
      std::vector<std::vector<std::int64_t>> rounds;
      for (int i = 0;; ++i) {
        std::string name = "round" + std::to_string(i);
        if (!rounds_node.has(name)) break;
        rounds.push_back(parse_int_list(rounds_node.get(name)));
      }
      auto res = pigeonhole_iterate(fms, config.get("set"), rounds);
      out.witness_missing = !res.completed;
      Json steps = Json::array();
      for (const auto& s : res.steps) {
        Json js;
        js["t1"] = s.t1;
        js["t2"] = s.t2;
        js["shift1"] = s.shift1;
        js["shift2"] = s.shift2;
        js["measure_before"] = rat_str(s.measure_before);
        js["pair_measure"] = rat_str(s.pair_measure);
        steps.push_back(js);
      }
      out.outcome["steps"] = steps;
      out.outcome["completed"] = res.completed;
      out.outcome["failed_round"] = res.failed_round;
      return out;
    }
    throw ConfigError("unknown pigeonhole mode: " + mode);
  }
  if (kind == "cube") {
    SystemSpec sys = build_system(config.child("system"));
    SystemPoint x = build_point(sys, config.child("x").get("point"));
    auto n = parse_int_list(config.get("n"));
    auto cube = cube_sample(sys, x, static_cast<int>(parse_int(config.get("d"))), n);
    Json entries = Json::array();
    for (const auto& e : cube.entries) entries.push_back(point_str(e));
    out.outcome["entries"] = entries;
    return out;
  }
  if (kind == "aa-scan") {
    SystemSpec sys = build_system(config.child("system"));
    SystemPoint x = build_point(sys, config.child("x").get("point"));
    auto budget = build_budget(config.child("budget"));
    std::uint64_t seed =
        static_cast<std::uint64_t>(parse_int(config.get_or("seed", "0")));
    auto grid = build_grid(sys, config.child("grid"), seed);
    auto res = aa_scan(sys, x, static_cast<int>(parse_int(config.get("d"))),
                       parse_rat(config.get("eps")), grid, budget,
                       build_options(config), threads);
    out.witness_missing = res.hits.empty();
    Json grid_json = Json::array();
    for (const auto& g : grid) grid_json.push_back(point_str(g));
    out.outcome["grid"] = grid_json;
    Json hits = Json::array();
    for (const auto& h : res.hits) {
      Json jh;
      jh["grid_index"] = static_cast<std::int64_t>(h.grid_index);
      jh["point"] = point_str(grid[h.grid_index]);
      jh["witness"] = j_witness(h.witness);
      jh["stats"] = j_stats(h.stats);
      hits.push_back(jh);
    }
    out.outcome["hits"] = hits;
    Json bases = Json::array();
    for (auto b : res.base_indices) bases.push_back(static_cast<std::int64_t>(b));
    out.outcome["base_indices"] = bases;
    return out;
  }
  if (kind == "ramsey-sg2") {
    const ConfigNode& pn = config.child("p");
    auto p = make_super_lacunary(parse_int(pn.get("seed")), parse_int(pn.get("slack")),
                                 static_cast<int>(parse_int(pn.get("count"))));
    auto [lo, hi] = parse_range(config.get("window"));
    std::int64_t max_nodes =
        config.has("max_nodes") ? parse_int(config.get("max_nodes")) : (std::int64_t{1} << 40);
    auto lw = partition_sg2(p, lo, hi);
    out.outcome["sg2_size"] = static_cast<std::int64_t>(lw.window.size());
    Json classes = Json::object();
    for (const std::string& label : {"B0", "B1", "B2"}) {
      std::vector<std::int64_t> vals;
      for (std::size_t i = 0; i < lw.window.size(); ++i)
        if (lw.labels[i] == label) vals.push_back(lw.window.members()[i]);
      LabeledWindow one;
      one.window = IntegerWindow::from_sorted(lo, hi, vals);
      one.labels.assign(vals.size(), label);
      auto res = find_monochromatic_triple(one, max_nodes);
      Json jc = j_triple_result(res);
      jc["size"] = static_cast<std::int64_t>(vals.size());
      classes[label] = jc;
    }
    out.outcome["classes"] = classes;
    LabeledWindow whole;
    whole.window = lw.window;
    whole.labels.assign(lw.window.size(), "all");
    auto res = find_monochromatic_triple(whole, max_nodes);
    out.outcome["unpartitioned"] = j_triple_result(res);
    out.witness_missing = !res.triple.has_value();
    return out;
  }
  throw ConfigError("unknown experiment kind: " + kind);
}

}  // namespace

RunOutcome run_experiment(const ConfigNode& config, int threads) {
  const std::string& kind = config.get("experiment");
  RunOutcome out;
  auto start = std::chrono::steady_clock::now();
  Json outcome;
  bool missing = false;
  bool precision = false;
  try {
    KindRun r = run_kind(kind, config, threads);
    outcome = std::move(r.outcome);
    missing = r.witness_missing;
  } catch (const precision_error& e) {
    outcome["error"] = "precision-exhaustion";
    outcome["message"] = e.what();
    precision = true;
    missing = true;
  }
  auto stop = std::chrono::steady_clock::now();

  Json core;
  core["kind"] = kind;
  core["config"] = config_to_json(config);
  core["outcome"] = outcome;
  core["version"] = kVersion;
  std::string hash = canonical_hash(core);
  core["canonical_hash"] = hash;
  core["wall_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
  out.report = std::move(core);
  out.witness_missing = missing;
  out.precision_exhausted = precision;
  return out;
}

namespace {

struct Checker {
  VerifyOutcome out;

  bool check(bool ok, const std::string& name) {
    if (!ok && out.ok) {
      out.ok = false;
      out.first_failure = name;
    }
    return ok;
  }
};

void verify_witness_against(Checker& c, const Json& jw, const IntegerWindow& target,
                            const std::string& what) {
  FSWitness w = witness_from_json(jw);
  if (!c.check(!w.entries.empty(), what + ": witness has entries")) return;
  auto sums = fs_sums(w.entries);
  if (!c.check(sums == w.sums, what + ": sums recompute from entries")) return;
  std::int64_t base = w.base.value_or(0);
  for (std::int64_t s : sums) {
    std::int64_t v;
    if (!c.check(!__builtin_add_overflow(s, base, &v) && target.contains(v),
                 what + ": sum " + std::to_string(s) + " lies in the target"))
      return;
  }
}

}  // namespace

VerifyOutcome verify_report(const Json& report) {
  Checker c;
  try {
    std::string kind = report.at("kind").get<std::string>();
    ConfigNode config = config_from_json(report.at("config"));
    const Json& outcome = report.at("outcome");

    if (outcome.contains("error")) {
      // precision exhaustion reports carry no certificates; hash check only
    } else if (kind == "gen-set") {
      auto [lo, hi] = parse_range(config.get("window"));
      auto w = eval_window(build_descriptor(config.child("set")), lo, hi);
      c.check(outcome.at("window").at("members").get<std::vector<std::int64_t>>() ==
                  w.members(),
              "gen-set: window recomputes");
    } else if (kind == "return-set") {
      SystemSpec sys = build_system(config.child("system"));
      SystemPoint x = build_point(sys, config.child("x").get("point"));
      Neighborhood u = build_neighborhood(sys, config.child("neighborhood"));
      auto [lo, hi] = parse_range(config.get("window"));
      auto members =
          outcome.at("definite").at("members").get<std::vector<std::int64_t>>();
      // membership recheck via the closed-form route, index by index
      bool ok = true;
      for (std::int64_t n : members)
        if (membership_verdict(sys, x, u, n) != Verdict::In) { ok = false; break; }
      c.check(ok, "return-set: every member re-verifies");
      auto rs = return_set(sys, x, u, lo, hi);
      c.check(rs.definite.members() == members, "return-set: window recomputes");
    } else if (kind == "fs-witness") {
      auto budget = build_budget(config.child("budget"));
      auto target =
          eval_window(build_descriptor(config.child("target")), budget.lo, budget.hi);
      if (!outcome.at("witness").is_null())
        verify_witness_against(c, outcome.at("witness"), target, "fs-witness");
    } else if (kind == "rp-witness") {
      SystemSpec sys = build_system(config.child("system"));
      SystemPoint x = build_point(sys, config.child("x").get("point"));
      SystemPoint y = build_point(sys, config.child("y").get("point"));
      auto budget = build_budget(config.child("budget"));
      Neighborhood ball = Neighborhood::ball(y, parse_rat(config.get("eps")));
      if (!outcome.at("witness").is_null()) {
        FSWitness w = witness_from_json(outcome.at("witness"));
        auto sums = fs_sums(w.entries);
        c.check(sums == w.sums, "rp-witness: sums recompute from entries");
        for (std::int64_t s : sums)
          c.check(membership_verdict(sys, x, ball, s) == Verdict::In,
                  "rp-witness: sum " + std::to_string(s) + " returns into the ball");
      }
    } else if (kind == "sg-containment") {
      auto [lo, hi] = parse_range(config.get("window"));
      auto res = check_sg_containment(build_sequence(config.get("p")),
                                      static_cast<int>(parse_int(config.get("d"))),
                                      build_descriptor(config.child("target")), lo, hi);
      const char* status =
          res.status == SgContainmentResult::Status::Contained ? "contained"
          : res.status == SgContainmentResult::Status::Counterexample
              ? "counterexample"
              : "window-truncated";
      c.check(outcome.at("status").get<std::string>() == status,
              "sg-containment: status recomputes");
    } else if (kind == "intersective") {
      auto budget = build_budget(config.child("budget"));
      auto p = eval_window(build_descriptor(config.child("p")), budget.lo, budget.hi);
      auto f = eval_window(build_descriptor(config.child("f")), budget.lo, budget.hi);
      if (!outcome.at("witness").is_null()) {
        FSWitness w = witness_from_json(outcome.at("witness"));
        auto sums = fs_sums(w.entries);
        c.check(sums == w.sums, "intersective: sums recompute from entries");
        for (std::int64_t s : sums)
          c.check(p.contains(s), "intersective: sum " + std::to_string(s) + " in p");
        c.check(w.base.has_value(), "intersective: witness carries a base");
        if (w.base) {
          c.check(f.contains(*w.base), "intersective: base in f");
          for (std::int64_t s : sums)
            c.check(f.contains(*w.base + s),
                    "intersective: base + " + std::to_string(s) + " in f");
        }
      }
    } else if (kind == "poincare-d") {
      auto fms = build_fms(config.child("fms"));
      auto budget = build_budget(config.child("budget"));
      auto p = eval_window(build_descriptor(config.child("p")), budget.lo, budget.hi);
      if (!outcome.at("witness").is_null()) {
        FSWitness w = witness_from_json(outcome.at("witness"));
        auto sums = fs_sums(w.entries);
        c.check(sums == w.sums, "poincare-d: sums recompute from entries");
        for (std::int64_t s : sums)
          c.check(p.contains(s), "poincare-d: sum " + std::to_string(s) + " in p");
        Rat mu = fms.measure_intersection(config.get("set"), sums);
        c.check(mu > 0, "poincare-d: intersection has positive measure");
        c.check(rat_str(mu) == outcome.at("measure").get<std::string>(),
                "poincare-d: measure recomputes");
      }
    } else if (kind == "birkhoff-d") {
      auto fms = build_fms(config.child("fms"));
      auto budget = build_budget(config.child("budget"));
      auto p = eval_window(build_descriptor(config.child("p")), budget.lo, budget.hi);
      if (!outcome.at("witness").is_null()) {
        FSWitness w = witness_from_json(outcome.at("witness"));
        auto sums = fs_sums(w.entries);
        c.check(sums == w.sums, "birkhoff-d: sums recompute from entries");
        for (std::int64_t s : sums)
          c.check(p.contains(s), "birkhoff-d: sum " + std::to_string(s) + " in p");
        BitVec inter =
            fms.intersection_set(fms.set(config.get("open_set")), sums);
        c.check(inter.count() == outcome.at("intersection_size").get<std::int64_t>(),
                "birkhoff-d: intersection recomputes");
        c.check(inter.any(), "birkhoff-d: intersection nonempty");
      }
    } else if (kind == "pigeonhole") {
      auto fms = build_fms(config.child("fms"));
      std::string mode = outcome.at("mode").get<std::string>();
      if (mode == "exhaustive" && !outcome.at("selection").is_null()) {
        auto names_raw = split(config.get("sets"), ',');
        auto indices = outcome.at("selection").at("indices").get<std::vector<int>>();
        BitVec acc = fms.set(names_raw[static_cast<std::size_t>(indices.at(0))]);
        for (std::size_t i = 1; i < indices.size(); ++i)
          acc = acc.intersect(fms.set(names_raw[static_cast<std::size_t>(indices[i])]));
        Rat mu = fms.measure(acc);
        c.check(rat_str(mu) == outcome.at("selection").at("measure").get<std::string>(),
                "pigeonhole: measure recomputes");
        Rat threshold = parse_rat(outcome.at("selection").at("threshold").get<std::string>());
        c.check(mu >= threshold, "pigeonhole: measure meets the bound");
      }
      if (mode == "iterative") {
        BitVec current = fms.set(config.get("set"));
        for (const auto& js : outcome.at("steps")) {
          Rat before = fms.measure(current);
          c.check(rat_str(before) == js.at("measure_before").get<std::string>(),
                  "pigeonhole-iterative: running measure recomputes");
          BitVec e1 = fms.preimage(current, js.at("shift1").get<std::int64_t>());
          BitVec e2 = fms.preimage(current, js.at("shift2").get<std::int64_t>());
          Rat pair = fms.measure(e1.intersect(e2));
          c.check(rat_str(pair) == js.at("pair_measure").get<std::string>(),
                  "pigeonhole-iterative: pair measure recomputes");
          c.check(pair >= before * before / 2, "pigeonhole-iterative: pair bound holds");
          current = current.intersect(fms.preimage(
              current, js.at("shift2").get<std::int64_t>() -
                           js.at("shift1").get<std::int64_t>()));
        }
      }
    } else if (kind == "cube") {
      SystemSpec sys = build_system(config.child("system"));
      SystemPoint x = build_point(sys, config.child("x").get("point"));
      auto n = parse_int_list(config.get("n"));
      auto cube = cube_sample(sys, x, static_cast<int>(parse_int(config.get("d"))), n);
      auto entries = outcome.at("entries").get<std::vector<std::string>>();
      c.check(entries.size() == cube.entries.size(), "cube: entry count recomputes");
      for (std::size_t i = 0; i < cube.entries.size() && c.out.ok; ++i)
        c.check(entries[i] == point_str(cube.entries[i]),
                "cube: entry " + std::to_string(i) + " recomputes");
    } else if (kind == "aa-scan") {
      SystemSpec sys = build_system(config.child("system"));
      SystemPoint x = build_point(sys, config.child("x").get("point"));
      Rat eps = parse_rat(config.get("eps"));
      for (const auto& jh : outcome.at("hits")) {
        SystemPoint y = build_point(sys, jh.at("point").get<std::string>());
        Neighborhood ball = Neighborhood::ball(y, eps);
        FSWitness w = witness_from_json(jh.at("witness"));
        auto sums = fs_sums(w.entries);
        c.check(sums == w.sums, "aa-scan: sums recompute from entries");
        for (std::int64_t s : sums)
          c.check(membership_verdict(sys, x, ball, s) == Verdict::In,
                  "aa-scan: sum " + std::to_string(s) + " returns into the ball");
      }
    } else if (kind == "ramsey-sg2") {
      const ConfigNode& pn = config.child("p");
      auto p = make_super_lacunary(parse_int(pn.get("seed")), parse_int(pn.get("slack")),
                                   static_cast<int>(parse_int(pn.get("count"))));
      auto [lo, hi] = parse_range(config.get("window"));
      auto lw = partition_sg2(p, lo, hi);
      std::map<std::int64_t, std::string> label_of;
      for (std::size_t i = 0; i < lw.window.size(); ++i)
        label_of[lw.window.members()[i]] = lw.labels[i];
      auto check_triple = [&](const Json& jt, const std::string& what, bool same_class) {
        if (jt.at("triple").is_null()) return;
        std::int64_t a1 = jt.at("triple").at("a1").get<std::int64_t>();
        std::int64_t a2 = jt.at("triple").at("a2").get<std::int64_t>();
        std::int64_t a3 = jt.at("triple").at("a3").get<std::int64_t>();
        c.check(a1 < a2 && a2 < a3, what + ": triple is ascending");
        for (std::int64_t v : {a1, a2, a3, a1 + a2, a1 + a3, a2 + a3})
          c.check(label_of.contains(v),
                  what + ": value " + std::to_string(v) + " lies in SG_2 window");
        if (same_class && c.out.ok) {
          std::string l = jt.at("triple").at("label").get<std::string>();
          for (std::int64_t v : {a1, a2, a3, a1 + a2, a1 + a3, a2 + a3})
            c.check(label_of[v] == l,
                    what + ": value " + std::to_string(v) + " shares the class");
        }
      };
      for (const auto& [label, jc] : outcome.at("classes").items())
        check_triple(jc, "ramsey-sg2 class " + label, true);
      check_triple(outcome.at("unpartitioned"), "ramsey-sg2 unpartitioned", false);
    } else {
      c.check(false, "unknown report kind: " + kind);
    }

    // canonical hash covers kind, config, outcome and version
    Json core;
    core["kind"] = kind;
    core["config"] = report.at("config");
    core["outcome"] = outcome;
    core["version"] = report.at("version");
    c.check(canonical_hash(core) == report.at("canonical_hash").get<std::string>(),
            "canonical hash matches the report body");
  } catch (const std::exception& e) {
    c.check(false, std::string("verification error: ") + e.what());
  }
  return c.out;
}

}  // namespace reclab::cli
