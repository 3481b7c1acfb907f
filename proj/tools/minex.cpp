// Command-line front end. Exit codes: 0 pass, 1 check failed, 2 usage,
// 3 capacity, 4 search budget exhausted, 5 ball radius too small.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "minex/collapse.hpp"
#include "minex/constructions.hpp"
#include "minex/error.hpp"
#include "minex/free_product.hpp"
#include "minex/io.hpp"
#include "minex/kpr.hpp"
#include "minex/rays.hpp"
#include "minex/virtually_free.hpp"

namespace {

using namespace minex;

enum Exit { kPass = 0, kCheckFailed = 1, kUsage = 2, kCapacityExit = 3, kBudget = 4, kRadius = 5 };

struct Global {
  std::uint64_t seed = 0;
  std::string out = "-";
  std::string format = "json";
  int threads = 1;
};

Json global_config(const Global& g) {
  return Json{{"seed", g.seed}, {"format", g.format}, {"threads", g.threads}};
}

void emit(const Global& g, const Json& doc) { write_text_file(g.out, doc.dump(2) + "\n"); }

void require_json_format(const Global& g) {
  require(g.format == "json", "this command only writes JSON");
}

std::vector<Element> parse_element_list(const GroupTerm& term, const std::string& text) {
  std::vector<Element> out;
  for (std::string_view w : split_top_level(text, ',')) {
    if (!w.empty()) out.push_back(parse_element(term, w));
  }
  return out;
}

// A host is either a graph file or a Cayley ball built from a spec.
struct HostSource {
  std::string host_file;
  std::string spec;
  int radius = -1;
  std::size_t cap = kDefaultBallCap;

  void add(CLI::App* app) {
    app->add_option("--host", host_file, "graph JSON file (or a document with a 'host' field)");
    app->add_option("--spec", spec, "group spec, e.g. \"Z^2 | gens=auto\"");
    app->add_option("--radius", radius, "ball radius when --spec is used");
    app->add_option("--cap", cap, "maximum ball size");
  }

  struct Loaded {
    Graph graph;
    std::optional<CayleyBall> ball;
    std::optional<GroupSpec> spec;
  };

  Loaded load() const {
    require(host_file.empty() != spec.empty(), "give exactly one of --host or --spec");
    Loaded l;
    if (!host_file.empty()) {
      const Json j = Json::parse(read_text_file(host_file));
      l.graph = graph_from_json(j.contains("host") ? j.at("host") : j.contains("graph") ? j.at("graph") : j);
      return l;
    }
    require(radius >= 0, "--radius is required with --spec");
    l.spec = parse_group_spec(spec);
    l.ball = cayley_ball(*l.spec, radius, cap);
    l.graph = l.ball->graph;
    return l;
  }

  Json config() const {
    Json j;
    if (!host_file.empty()) j["host"] = host_file;
    if (!spec.empty()) {
      j["spec"] = parse_group_spec(spec).to_string();
      j["radius"] = radius;
    }
    return j;
  }
};

Json element_sets_json(const GroupTerm& term, const std::vector<std::vector<Element>>& sets) {
  Json out = Json::array();
  for (const auto& s : sets) {
    Json row = Json::array();
    for (const Element& e : s) row.push_back(format_element(term, e));
    out.push_back(std::move(row));
  }
  return out;
}

Json minor_document(const std::string& command, Json config, const MinorInstance& inst) {
  const MinorVerdict v = verify_minor(inst.ball.graph, inst.decomposition);
  Json doc = make_header(command, std::move(config));
  doc["spec"] = inst.spec.to_string();
  doc["radius"] = inst.ball.radius;
  doc["decomposition"] = decomposition_to_json(inst.decomposition, inst.ball.graph);
  doc["element_sets"] = element_sets_json(inst.spec.term, inst.element_sets);
  doc["verdict"] = verdict_to_json(v);
  doc["host"] = ball_to_json(inst.ball);
  return doc;
}

int run_ball(const Global& g, const std::string& spec_text, int radius, std::size_t cap) {
  const GroupSpec spec = parse_group_spec(spec_text);
  const CayleyBall ball = cayley_ball(spec, radius, cap);
  if (g.format == "csv") {
    std::ostringstream csv;
    csv << "u,v\n";
    for (const Edge& e : ball.graph.edges()) csv << e.u << ',' << e.v << '\n';
    write_text_file(g.out, csv.str());
    return kPass;
  }
  Json config = global_config(g);
  config["spec"] = spec.to_string();
  config["radius"] = radius;
  Json doc = make_header("ball", config);
  doc["spec"] = spec.to_string();
  doc["radius"] = radius;
  doc["num_vertices"] = ball.graph.num_vertices();
  doc["num_edges"] = ball.graph.num_edges();
  doc["graph"] = ball_to_json(ball);
  emit(g, doc);
  return kPass;
}

struct MinorArgs {
  HostSource host;
  int m = 0;
  std::uint64_t budget = 1'000'000;
  std::string in = "-";
  std::string cyclic = "2";
  std::string s1, s2, s3;
  bool menger = false;
};

int run_minor_find(const Global& g, const MinorArgs& a) {
  require_json_format(g);
  require(a.m >= 1, "--m must be at least 1");
  const auto host = a.host.load();
  CliqueSearchOptions opt;
  opt.budget = a.budget;
  opt.seed = g.seed;
  const CliqueSearchResult r = find_clique_minor(host.graph, static_cast<std::size_t>(a.m), opt);
  Json config = global_config(g);
  config.update(a.host.config());
  config["m"] = a.m;
  config["budget"] = a.budget;
  Json doc = make_header("minor find", config);
  doc["found"] = r.decomposition.has_value();
  doc["expansions"] = r.expansions;
  doc["exhaustive"] = r.exhaustive;
  if (host.spec) {
    doc["spec"] = host.spec->to_string();
    doc["radius"] = a.host.radius;
  }
  if (r.decomposition) {
    doc["decomposition"] = decomposition_to_json(*r.decomposition, host.graph);
    doc["verdict"] = verdict_to_json(verify_minor(host.graph, *r.decomposition));
  }
  doc["host"] = host.ball ? ball_to_json(*host.ball) : graph_to_json(host.graph);
  emit(g, doc);
  return r.decomposition ? kPass : kBudget;
}

int run_minor_verify(const Global& g, const MinorArgs& a) {
  require_json_format(g);
  const Json doc = Json::parse(read_text_file(a.in));
  require(doc.contains("decomposition") || doc.contains("sets"), "input has no decomposition");
  const BranchDecomposition bd = decomposition_from_json(doc.contains("decomposition") ? doc.at("decomposition") : doc);
  Graph host;
  if (!a.host.host_file.empty() || !a.host.spec.empty()) {
    host = a.host.load().graph;
  } else {
    require(doc.contains("host"), "input has no embedded host; pass --host or --spec");
    host = graph_from_json(doc.at("host"));
  }
  const MinorVerdict v = verify_minor(host, bd);
  Json out = make_header("minor verify", global_config(g));
  out["verdict"] = verdict_to_json(v);
  const Json& dj = doc.contains("decomposition") ? doc.at("decomposition") : doc;
  if (dj.contains("host_hash")) out["host_hash_matches"] = dj.at("host_hash").get<std::string>() == host_hash(host);
  emit(g, out);
  return v.passed() ? kPass : kCheckFailed;
}

int run_construct_z2s2(const Global& g, const MinorArgs& a) {
  require_json_format(g);
  const MinorInstance inst = construct_z2_s2_minor(a.m);
  Json config = global_config(g);
  config["m"] = a.m;
  emit(g, minor_document("minor construct-z2s2", config, inst));
  return verify_minor(inst.ball.graph, inst.decomposition).passed() ? kPass : kCheckFailed;
}

int run_construct_z2xc(const Global& g, const MinorArgs& a) {
  require_json_format(g);
  GroupSpec spec;
  if (!a.host.spec.empty()) {
    spec = parse_group_spec(a.host.spec);
  } else {
    const int order = a.cyclic == "Z" ? 0 : std::stoi(a.cyclic);
    spec = z2xc_spec(order);
  }
  const std::string d1 = a.s1.empty() ? "(1,0,0)" : a.s1;
  const std::string d2 = a.s2.empty() ? "(0,1,0)" : a.s2;
  const std::string d3 = a.s3.empty() ? "(0,0,1)" : a.s3;
  const MinorInstance inst = construct_z2xc_minor(a.m, spec, parse_element(spec.term, d1),
                                                  parse_element(spec.term, d2), parse_element(spec.term, d3));
  Json config = global_config(g);
  config["m"] = a.m;
  config["spec"] = spec.to_string();
  config["s1"] = d1;
  config["s2"] = d2;
  config["s3"] = d3;
  emit(g, minor_document("minor construct-z2xc", config, inst));
  return verify_minor(inst.ball.graph, inst.decomposition).passed() ? kPass : kCheckFailed;
}

int run_project(const Global& g, const MinorArgs& a) {
  require_json_format(g);
  require(!a.host.spec.empty() && a.host.radius >= 0, "project needs --spec and --radius of the host ball");
  const GroupSpec spec = parse_group_spec(a.host.spec);
  const CayleyBall ball = cayley_ball(spec, a.host.radius, a.host.cap);
  const Json doc = Json::parse(read_text_file(a.in));
  const Json& dj = doc.contains("decomposition") ? doc.at("decomposition") : doc;
  if (dj.contains("host_hash")) {
    require(dj.at("host_hash").get<std::string>() == host_hash(ball.graph),
            "decomposition was not built on this Cayley ball (host_hash mismatch)");
  }
  ProjectionOptions opt;
  opt.menger_check = a.menger;
  const ProjectionResult r = project_free_product_minor(spec, ball, decomposition_from_json(dj), opt);
  Json config = global_config(g);
  config.update(a.host.config());
  Json out = make_header("minor project", config);
  out["factor"] = r.side == 0 ? "left" : "right";
  out["coset_tail"] = format_element(spec.term, r.coset_tail);
  out["spec"] = r.factor_spec.to_string();
  out["radius"] = r.factor_ball.radius;
  out["decomposition"] = decomposition_to_json(r.decomposition, r.factor_ball.graph);
  out["verdict"] = verdict_to_json(r.verdict);
  if (!r.menger_counts.empty()) out["menger_counts"] = r.menger_counts;
  out["host"] = ball_to_json(r.factor_ball);
  emit(g, out);
  return r.verdict.passed() ? kPass : kCheckFailed;
}

int run_collapse(const Global& g, const HostSource& hs, const std::string& classes_file, int pair_size) {
  require_json_format(g);
  const auto host = hs.load();
  std::vector<std::uint64_t> class_of(host.graph.num_vertices());
  if (!classes_file.empty()) {
    const Json j = Json::parse(read_text_file(classes_file));
    class_of = (j.is_object() ? j.at("class_of") : j).get<std::vector<std::uint64_t>>();
  } else if (pair_size > 0) {
    // Integer labels grouped as floor(label / pair_size); needs a Z ball.
    require(host.ball && host.ball->elements.front().word.size() == 1 && host.spec &&
                host.spec->term.kind() == GroupKind::kFreeAbelian,
            "--block needs a Cayley ball of Z");
    for (Vertex v = 0; v < class_of.size(); ++v) {
      const std::int64_t x = host.ball->elements[v].word[0];
      const std::int64_t q = x >= 0 ? x / pair_size : -((-x + pair_size - 1) / pair_size);
      class_of[v] = static_cast<std::uint64_t>(q) ^ 0x8000000000000000ull;
    }
  } else {
    for (Vertex v = 0; v < class_of.size(); ++v) class_of[v] = v;
  }
  const Collapse c = babai_collapse(host.graph, class_of);
  Json config = global_config(g);
  config.update(hs.config());
  if (pair_size > 0) config["block"] = pair_size;
  Json out = make_header("collapse", config);
  Json classes = Json::array();
  for (const VertexSet& s : c.classes) classes.push_back(s.members());
  out["classes"] = std::move(classes);
  out["quotient"] = graph_to_json(c.quotient);
  emit(g, out);
  return kPass;
}

struct KprArgs {
  HostSource host;
  int m = 1;
  std::vector<int> s_list{1};
  bool j_from_one = false;
  int cap = kDefaultPartitionCap;
  bool rows = false;
};

int run_kpr(const Global& g, const KprArgs& a) {
  require(a.m >= 1 && a.m <= a.cap, "m must lie in 1.." + std::to_string(a.cap) + " (4^m partitions)");
  const auto host = a.host.load();
  NagataOptions opt;
  opt.partitions.cap = a.cap;
  opt.partitions.threads = g.threads;
  opt.partitions.j_from_one = a.j_from_one;
  if (host.ball) opt.ball_radius = host.ball->radius;
  opt.keep_rows = g.format == "csv" || a.rows;
  const auto reports = nagata_witness(host.graph, a.m, a.s_list, opt);
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.passed();

  if (g.format == "csv") {
    std::ostringstream csv;
    csv << "s,partition,delta,cluster,cluster_size,cover_size,diameter\n";
    for (const auto& r : reports) {
      const std::vector<std::vector<int>> deltas = [&] {
        std::vector<std::vector<int>> d;
        for (std::size_t p = 0; p < r.num_partitions; ++p) {
          std::vector<int> t(r.m);
          for (int k = r.m - 1, x = static_cast<int>(p); k >= 0; --k, x /= 4) t[k] = (x % 4) * r.R;
          d.push_back(t);
        }
        return d;
      }();
      for (const auto& row : r.diameters.rows) {
        std::string delta;
        for (int d : deltas[row.partition]) delta += (delta.empty() ? "" : " ") + std::to_string(d);
        csv << r.s << ',' << row.partition << ',' << delta << ',' << row.cluster << ',' << row.cluster_size
            << ',' << row.cover_size << ',' << (row.diameter ? std::to_string(*row.diameter) : "") << '\n';
      }
    }
    write_text_file(g.out, csv.str());
    return ok ? kPass : kCheckFailed;
  }
  Json config = global_config(g);
  config.update(a.host.config());
  config["m"] = a.m;
  config["s"] = a.s_list;
  config["j_from_one"] = a.j_from_one;
  Json out = make_header("kpr", config);
  out["num_vertices"] = host.graph.num_vertices();
  Json scales = Json::array();
  for (const auto& r : reports) scales.push_back(scale_report_to_json(r));
  out["reports"] = std::move(scales);
  out["pass"] = ok;
  emit(g, out);
  return ok ? kPass : kCheckFailed;
}

struct RaysArgs {
  std::string spec;
  int m = 2;
  int radius = 0;
  std::string ray_file;
  int menger_core = -1;
  int max_suggest = 1024;
};

int run_rays(const Global& g, const RaysArgs& a) {
  require_json_format(g);
  const GroupSpec spec = parse_group_spec(a.spec);
  std::optional<std::vector<std::vector<Element>>> rays;
  if (!a.ray_file.empty()) {
    rays = parse_ray_file(spec.term, read_text_file(a.ray_file));
  } else if (a.menger_core >= 0) {
    const RayContext ctx = make_ray_context(spec, a.radius);
    const MengerRays mr = menger_rays(ctx.base_graph, a.m, a.menger_core);
    require(!mr.separator, "fewer than m disjoint paths: a separator of size " +
                               std::to_string(mr.separator ? mr.separator->size() : 0) + " exists");
    std::vector<std::vector<Element>> els;
    for (const Path& p : mr.paths) {
      els.emplace_back();
      for (Vertex v : p) els.back().push_back(ctx.host.elements[v]);
    }
    rays = std::move(els);
  } else {
    require(has_standard_rays(spec), "no built-in rays for this group; pass --ray-file or --menger");
  }

  Json config = global_config(g);
  config["spec"] = spec.to_string();
  config["m"] = a.m;
  config["radius"] = a.radius;
  if (!a.ray_file.empty()) config["ray_file"] = a.ray_file;
  if (a.menger_core >= 0) config["menger_core"] = a.menger_core;

  RayBuild build;
  try {
    build = build_minor_from_rays(spec, a.m, a.radius, rays);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kInsufficientRadius || rays) throw;
    std::optional<int> suggested;
    for (int r = std::max(2 * a.radius, 1); r <= a.max_suggest; r *= 2) {
      try {
        build_minor_from_rays(spec, a.m, r, rays);
        suggested = r;
        break;
      } catch (const Error& inner) {
        if (inner.kind() != ErrorKind::kInsufficientRadius) throw;
      }
    }
    Json out = make_header("rays", config);
    out["error"] = e.what();
    if (suggested) out["suggested_radius"] = *suggested;
    emit(g, out);
    std::cerr << "error: " << e.what();
    if (suggested) std::cerr << " (radius " << *suggested << " suffices)";
    std::cerr << '\n';
    return kRadius;
  }

  Json out = make_header("rays", config);
  out["spec"] = build.ctx.enlarged.to_string();
  out["base_spec"] = spec.to_string();
  out["radius"] = a.radius;
  out["decomposition"] = decomposition_to_json(build.decomposition, build.ctx.host.graph);
  out["verdict"] = verdict_to_json(build.verdict);
  Json log = Json::array();
  for (const Connection& c : build.state.connections) {
    Json removals = Json::array();
    for (const Removal& r : c.removals) {
      removals.push_back({{"case", to_string(r.kind)}, {"set", r.set}, {"L1_length", r.L1.size()}});
    }
    log.push_back({{"pair", {c.i, c.j}},
                   {"path_length", c.path.empty() ? 0 : c.path.size() - 1},
                   {"removals", std::move(removals)},
                   {"exclusion_radius", c.exclusion_radius}});
  }
  out["connections"] = std::move(log);
  out["num_connections"] = build.state.connections.size();
  out["required_exclusion_radius"] = build.state.exclusion_radius;
  out["host"] = ball_to_json(build.ctx.host);
  emit(g, out);
  return build.verdict.passed() ? kPass : kCheckFailed;
}

struct VfreeArgs {
  std::string spec;
  std::string basis;
  std::string reps;
  int probe = 3;
  std::string audit_file;
};

Json factor_json(const CosetFactorizer::Factor& f) { return Json{{"rep", f.rep}, {"word", f.word}}; }

int run_vfree(const Global& g, const VfreeArgs& a) {
  require_json_format(g);
  const GroupSpec spec = parse_group_spec(a.spec);
  const auto basis = parse_element_list(spec.term, a.basis);
  const auto reps = parse_element_list(spec.term, a.reps);
  const VirtuallyFreeBound b = virtually_free_bound(spec, basis, reps, a.probe);
  Json config = global_config(g);
  config["spec"] = spec.to_string();
  config["basis"] = a.basis;
  config["reps"] = a.reps;
  config["probe_radius"] = a.probe;
  Json out = make_header("vfree-bound", config);
  out["n"] = b.n;
  out["k"] = b.k;
  out["M"] = b.M;
  out["D_emp"] = b.D_emp;
  out["worst_edge"] = b.worst_edge.q;
  out["edges_probed"] = b.edges_probed;
  out["m_threshold"] = b.m_threshold;
  Json f = Json::array();
  for (const auto& row : b.f) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(factor_json(x));
    f.push_back(std::move(r));
  }
  out["f"] = std::move(f);

  bool ok = true;
  if (!a.audit_file.empty()) {
    const Json doc = Json::parse(read_text_file(a.audit_file));
    require(doc.contains("radius"), "audit document must record the ball radius");
    const CayleyBall ball = cayley_ball(spec, doc.at("radius").get<int>());
    const Json& dj = doc.contains("decomposition") ? doc.at("decomposition") : doc;
    if (dj.contains("host_hash")) {
      require(dj.at("host_hash").get<std::string>() == host_hash(ball.graph),
              "audit decomposition was not built on this Cayley ball");
    }
    const BranchDecomposition bd = decomposition_from_json(dj);
    require(verify_minor(ball.graph, bd).passed(), "audit decomposition does not verify");
    CosetFactorizer fz(spec.term, basis, reps);
    Json audits = Json::array();
    for (const TreeEdge& e : tree_edges(static_cast<int>(b.n), a.probe)) {
      const CrossingAudit c = crossing_audit(fz, ball, e, bd);
      ok = ok && c.consistent();
      audits.push_back({{"q", e.q},
                        {"R_e", c.R_e},
                        {"kA", c.kA},
                        {"kB", c.kB},
                        {"crossing_edges", c.crossing_edges},
                        {"required_cross_pairs", c.required_cross_pairs},
                        {"consistent", c.consistent()}});
    }
    out["audits"] = std::move(audits);
    out["audit_pass"] = ok;
  }
  emit(g, out);
  return ok ? kPass : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cayley balls, clique minors and cover constructions"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--seed", g.seed, "seed for all randomness")->default_val(0);
  app.add_option("--out,-o", g.out, "output path, '-' for stdout")->default_val("-");
  app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->default_val("json");
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber)->default_val(1);

  std::string ball_spec;
  int ball_radius = 0;
  std::size_t ball_cap = kDefaultBallCap;
  // Global flags are also accepted after a subcommand.
  app.fallthrough();

  auto* ball = app.add_subcommand("ball", "Cayley ball of a group spec");
  ball->add_option("spec", ball_spec, "group spec")->required();
  ball->add_option("--radius", ball_radius, "ball radius")->required()->check(CLI::NonNegativeNumber);
  ball->add_option("--cap", ball_cap, "maximum number of vertices");

  MinorArgs ma;
  auto* minor = app.add_subcommand("minor", "clique minors");
  minor->require_subcommand(1);
  auto* find = minor->add_subcommand("find", "search for a K_m minor");
  ma.host.add(find);
  find->add_option("--m", ma.m, "clique order")->required();
  find->add_option("--budget", ma.budget, "node expansion budget");
  auto* verify = minor->add_subcommand("verify", "check a branch decomposition");
  verify->add_option("--in", ma.in, "decomposition document, '-' for stdin");
  ma.host.add(verify);
  auto* z2s2 = minor->add_subcommand("construct-z2s2", "explicit K_m in Cay(Z^2, S2)");
  z2s2->add_option("--m", ma.m, "clique order")->required()->check(CLI::PositiveNumber);
  auto* z2xc = minor->add_subcommand("construct-z2xc", "explicit K_m in Z^2 x C");
  z2xc->add_option("--m", ma.m, "clique order")->required()->check(CLI::PositiveNumber);
  z2xc->add_option("--cyclic", ma.cyclic, "order of C, or Z for infinite cyclic");
  z2xc->add_option("--spec", ma.host.spec, "explicit group spec instead of --cyclic");
  z2xc->add_option("--s1", ma.s1);
  z2xc->add_option("--s2", ma.s2);
  z2xc->add_option("--s3", ma.s3);
  auto* project = minor->add_subcommand("project", "project a free product minor onto a factor");
  project->add_option("--in", ma.in, "decomposition document over the free product ball");
  project->add_option("--spec", ma.host.spec, "free product spec")->required();
  project->add_option("--radius", ma.host.radius, "host ball radius")->required();
  project->add_flag("--menger-check", ma.menger, "also count disjoint paths between branch sets");

  HostSource collapse_host;
  std::string classes_file;
  int block = 0;
  auto* collapse = app.add_subcommand("collapse", "quotient by connected classes");
  collapse_host.add(collapse);
  collapse->add_option("--classes", classes_file, "JSON array (or {class_of:[...]}) of class ids");
  collapse->add_option("--block", block, "for balls of Z: classes {kh, ..., kh+k-1}");

  KprArgs ka;
  auto* kpr = app.add_subcommand("kpr", "cut/partition/cover construction and its checks");
  ka.host.add(kpr);
  kpr->add_option("--m", ka.m, "number of cut levels")->required();
  kpr->add_option("--s", ka.s_list, "scales")->delimiter(',')->required();
  kpr->add_flag("--j-from-one", ka.j_from_one, "annuli start at j = 1");
  kpr->add_option("--partition-cap", ka.cap, "maximum m");
  kpr->add_flag("--rows", ka.rows, "keep per-element rows in the report");

  RaysArgs ra;
  auto* rays = app.add_subcommand("rays", "K_m from disjoint rays over S0 u S0S0 u S0S0S0");
  rays->add_option("spec", ra.spec, "group spec of S0")->required();
  rays->add_option("--m", ra.m, "clique order")->required()->check(CLI::PositiveNumber);
  rays->add_option("--radius", ra.radius, "ball radius")->required()->check(CLI::NonNegativeNumber);
  rays->add_option("--ray-file", ra.ray_file, "one ray per line, comma-separated elements");
  rays->add_option("--menger", ra.menger_core, "use Menger rays from this core radius");

  VfreeArgs va;
  auto* vfree = app.add_subcommand("vfree-bound", "bounds for a free subgroup of finite index");
  vfree->add_option("spec", va.spec, "group spec")->required();
  vfree->add_option("--basis", va.basis, "free basis elements, comma-separated")->required();
  vfree->add_option("--reps", va.reps, "coset representatives, identity first")->required();
  vfree->add_option("--probe", va.probe, "probe radius");
  vfree->add_option("--audit", va.audit_file, "decomposition document to audit against tree edges");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*ball) return run_ball(g, ball_spec, ball_radius, ball_cap);
    if (*find) return run_minor_find(g, ma);
    if (*verify) return run_minor_verify(g, ma);
    if (*z2s2) return run_construct_z2s2(g, ma);
    if (*z2xc) return run_construct_z2xc(g, ma);
    if (*project) return run_project(g, ma);
    if (*collapse) return run_collapse(g, collapse_host, classes_file, block);
    if (*kpr) return run_kpr(g, ka);
    if (*rays) return run_rays(g, ra);
    if (*vfree) return run_vfree(g, va);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::kCapacity:
        return kCapacityExit;
      case ErrorKind::kInsufficientRadius:
        return kRadius;
      case ErrorKind::kInvalidArgument:
        return kUsage;
    }
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON input: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
