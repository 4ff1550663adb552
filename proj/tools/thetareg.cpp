// thetareg: local theta-regulator scans, residue-set statistics, and the
// seeded density experiments, over the shipped Galois field specs.
//
// Subcommands:
//   scan       prime scan for Delta_p^theta(eta) = 0 (hit rows per theta)
//   stats-ip   m_p(u), M_p, u0, C over the residue set I_p(gamma)
//   stats-box  exhaustive full-box statistics (small p)
//   classify   exceptional / abundant / mixed classification at one prime
//   fixed-u    primes with theta-value(eta) = u
//   density    seeded Monte-Carlo density experiments (observed vs predicted)
//   binomial   exact binomial-law tails
//
// eta/gamma are comma-separated power-basis coefficients, lowest degree
// first, with an optional /denominator suffix. Exit codes: 0 success,
// 1 runtime failure, 2 config error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>

#include "CLI11.hpp"
#include "thetareg/binomial.hpp"
#include "thetareg/experiments.hpp"
#include "thetareg/report.hpp"

using namespace thetareg;

namespace {

void emit(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw ConfigError("cannot open output file: " + path);
  std::fwrite(text.data(), 1, text.size(), f);
  std::fclose(f);
}

RunManifest make_manifest(const std::string& command, const std::string& config, u64 seed,
                          int workers, const std::vector<std::string>& outputs) {
  RunManifest m;
  m.command = command;
  m.config = config;
  m.config_hash = fnv1a_hex(config);
  m.seed = seed;
  m.version = version_string();
  m.workers = workers;
  m.outputs = outputs;
  return m;
}

PAdicCharBundle pick_stats_bundle(const FieldSpec& F, u64 p, int index) {
  auto bs = stats_bundles(F, p);
  if (bs.empty()) throw ConfigError("no statistics bundle available at this prime");
  if (index < 0 || index >= (int)bs.size())
    throw ConfigError("--theta index out of range (have " + std::to_string(bs.size()) +
                      " bundles at p=" + std::to_string(p) + ")");
  return bs[index];
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"local theta-regulators of an algebraic number"};
  app.require_subcommand(1);

  std::string field_name, out_path = "-", jsonl_path;
  int workers = (int)std::thread::hardware_concurrency();

  auto* scan_cmd = app.add_subcommand("scan", "prime scan for null theta-regulators");
  std::string eta_text, theta_filter = "all";
  u64 pmin = 3, pmax = 0;
  bool emit_relations = false, classify_hits = false;
  scan_cmd->add_option("--field", field_name, "field spec name or path")->required();
  scan_cmd->add_option("--eta", eta_text, "eta coefficients (lowest degree first)")->required();
  scan_cmd->add_option("--pmin", pmin, "scan start");
  scan_cmd->add_option("--pmax", pmax, "scan end (inclusive)")->required();
  scan_cmd->add_option("--theta", theta_filter, "all | nontrivial | <stats-bundle index>");
  scan_cmd->add_option("--out", out_path, "hits CSV path (- for stdout)");
  scan_cmd->add_option("--jsonl", jsonl_path, "detailed JSON-lines path (relation bases)");
  scan_cmd->add_option("--workers", workers, "worker threads");
  scan_cmd->add_flag("--emit-relations", emit_relations, "include relation bases in the JSONL");
  scan_cmd->add_flag("--classify", classify_hits, "classify every hit");

  auto* ip_cmd = app.add_subcommand("stats-ip", "repetition statistics over I_p(gamma)");
  std::string gamma_text, plot_path;
  u64 single_p = 0;
  int theta_index = 0;
  ip_cmd->add_option("--field", field_name)->required();
  ip_cmd->add_option("--gamma", gamma_text, "generator coefficients")->required();
  ip_cmd->add_option("--p", single_p)->required();
  ip_cmd->add_option("--theta", theta_index, "stats bundle index (r choices ascending)");
  ip_cmd->add_option("--out", out_path);
  ip_cmd->add_option("--histogram", jsonl_path, "full m_p(u) histogram as JSON lines");
  ip_cmd->add_option("--emit-plot-data", plot_path, "(u, m_p(u)) columns plus M_p/log p header");
  ip_cmd->add_option("--workers", workers);

  auto* box_cmd = app.add_subcommand("stats-box", "exhaustive box statistics (small p)");
  u64 box_budget = 100000000ULL;
  box_cmd->add_option("--field", field_name)->required();
  box_cmd->add_option("--p", single_p)->required();
  box_cmd->add_option("--theta", theta_index);
  box_cmd->add_option("--budget", box_budget, "maximum p^n");
  box_cmd->add_option("--out", out_path);
  box_cmd->add_option("--workers", workers);

  auto* cls_cmd = app.add_subcommand("classify", "exceptional/abundant classification");
  cls_cmd->add_option("--field", field_name)->required();
  cls_cmd->add_option("--eta", eta_text)->required();
  cls_cmd->add_option("--p", single_p)->required();
  cls_cmd->add_option("--theta", theta_index);
  cls_cmd->add_option("--out", out_path);
  cls_cmd->add_option("--workers", workers);

  auto* fu_cmd = app.add_subcommand("fixed-u", "primes with theta-value(eta) = u");
  i64 fixed_u = 0;
  fu_cmd->add_option("--field", field_name)->required();
  fu_cmd->add_option("--eta", eta_text)->required();
  fu_cmd->add_option("--u", fixed_u)->required();
  fu_cmd->add_option("--pmin", pmin);
  fu_cmd->add_option("--pmax", pmax)->required();
  fu_cmd->add_option("--out", out_path);
  fu_cmd->add_option("--workers", workers);

  auto* den_cmd = app.add_subcommand("density", "seeded Monte-Carlo density experiment");
  std::string kind_text = "per-theta";
  u64 samples = 100000, seed = 0;
  std::vector<int> comp_idx;
  std::vector<u64> comp_val;
  den_cmd->add_option("--field", field_name)->required();
  den_cmd->add_option("--p", single_p)->required();
  den_cmd->add_option("--kind", kind_text,
                      "per-theta | joint | rank-lt-n | delta-eq-2 | extra-divisibility | "
                      "fixed-components");
  den_cmd->add_option("--n", samples, "sample count");
  den_cmd->add_option("--seed", seed, "PRNG seed (required: no silent entropy)")->required();
  den_cmd->add_option("--theta", theta_index);
  den_cmd->add_option("--components", comp_idx, "fixed-components basis indices");
  den_cmd->add_option("--values", comp_val, "fixed-components target values");
  den_cmd->add_option("--out", out_path);
  den_cmd->add_option("--workers", workers);

  auto* bin_cmd = app.add_subcommand("binomial", "binomial-law tails");
  u64 bin_p = 0, bin_m = 0;
  bin_cmd->add_option("--p", bin_p)->required();
  bin_cmd->add_option("--m", bin_m)->required();
  bin_cmd->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto t0 = std::chrono::steady_clock::now();
  try {
    if (workers < 1) workers = 1;

    if (scan_cmd->parsed()) {
      auto F = resolve_field(field_name);
      auto eta = parse_algebraic(eta_text, F.n);
      ScanConfig cfg;
      cfg.pmin = pmin;
      cfg.pmax = pmax;
      cfg.workers = workers;
      cfg.emit_relations = emit_relations || !jsonl_path.empty();
      cfg.classify_hits = classify_hits;
      if (theta_filter == "all") cfg.filter = ThetaFilter::all;
      else if (theta_filter == "nontrivial") cfg.filter = ThetaFilter::nontrivial;
      else {
        cfg.filter = ThetaFilter::index;
        cfg.theta_index = std::stoi(theta_filter);
      }
      std::string config = "scan field=" + F.name + " eta=" + eta.str() + " pmin=" +
                           std::to_string(pmin) + " pmax=" + std::to_string(pmax) +
                           " theta=" + theta_filter;
      auto res = scan(F, eta, cfg);
      auto manifest = make_manifest("scan", config, 0, workers, {out_path});
      CsvReport rep(manifest, {"p", "theta", "np", "f", "delta", "class"});
      for (const auto& h : res.hits)
        rep.add_row({std::to_string(h.p), h.theta_id, std::to_string(h.np), std::to_string(h.f),
                     std::to_string(h.delta), h.classification});
      std::string text = rep.serialize();
      for (const auto& w : res.warnings) text += "# warning " + w + "\n";
      emit(out_path, text);
      if (!jsonl_path.empty()) {
        JsonlReport jl(manifest);
        for (const auto& h : res.hits) {
          std::string rels = "[";
          for (size_t i = 0; i < h.relations.size(); ++i) {
            rels += (i ? ",[" : "[");
            for (size_t j = 0; j < h.relations[i].size(); ++j)
              rels += (j ? "," : "") + std::to_string(h.relations[i][j]);
            rels += "]";
          }
          rels += "]";
          jl.add("{\"p\":" + std::to_string(h.p) + ",\"theta\":\"" + h.theta_id +
                 "\",\"delta\":" + std::to_string(h.delta) + ",\"relations\":" + rels + "}");
        }
        jl.write(jsonl_path);
      }
      std::fprintf(stderr, "scan: %llu primes scanned, %zu hits\n",
                   (unsigned long long)res.primes_scanned, res.hits.size());
    } else if (ip_cmd->parsed()) {
      auto F = resolve_field(field_name);
      auto gamma = parse_algebraic(gamma_text, F.n);
      auto theta = pick_stats_bundle(F, single_p, theta_index);
      auto set = build_residue_set(F, gamma, single_p);
      auto st = repetition_stats(F, theta, set, single_p, workers);
      std::string config = "stats-ip field=" + F.name + " gamma=" + gamma.str() + " p=" +
                           std::to_string(single_p) + " theta=" + theta.id;
      auto manifest = make_manifest("stats-ip", config, 0, workers, {out_path});
      CsvReport rep(manifest, {"p", "np", "theta", "m_p0", "M_p", "u0", "C", "size"});
      rep.add_row({std::to_string(st.p), std::to_string(set.np), st.theta_id,
                   std::to_string(st.m0), std::to_string(st.Mp), std::to_string(st.u0),
                   std::to_string(st.reached), std::to_string(st.size)});
      emit(out_path, rep.serialize());
      if (!jsonl_path.empty()) {
        JsonlReport jl(manifest);
        for (auto [u, c] : st.counts)
          jl.add("{\"u\":" + std::to_string(u) + ",\"m\":" + std::to_string(c) + "}");
        jl.write(jsonl_path);
      }
      if (!plot_path.empty()) {
        std::string text = "# p " + std::to_string(st.p) + "  Mp/log(p) " +
                           format_double((double)st.Mp / std::log((double)st.p)) + "\n";
        for (auto [u, c] : st.counts) text += std::to_string(u) + " " + std::to_string(c) + "\n";
        emit(plot_path, text);
      }
    } else if (box_cmd->parsed()) {
      auto F = resolve_field(field_name);
      auto theta = pick_stats_bundle(F, single_p, theta_index);
      auto bx = box_stats(F, theta, single_p, workers, box_budget);
      std::string config = "stats-box field=" + F.name + " p=" + std::to_string(single_p) +
                           " theta=" + theta.id;
      auto manifest = make_manifest("stats-box", config, 0, workers, {out_path});
      CsvReport rep(manifest,
                    {"p", "np", "theta", "N_p", "m_p0", "M_p", "u0", "m_p0_norm", "M_p_norm"});
      rep.add_row({std::to_string(bx.p), std::to_string(bx.np), theta.id, std::to_string(bx.Np),
                   std::to_string(bx.m0), std::to_string(bx.Mp), std::to_string(bx.u0),
                   format_double(bx.m0_norm), format_double(bx.Mp_norm)});
      emit(out_path, rep.serialize());
    } else if (cls_cmd->parsed()) {
      auto F = resolve_field(field_name);
      auto eta = parse_algebraic(eta_text, F.n);
      auto theta = pick_stats_bundle(F, single_p, theta_index);
      auto cls = classify_solutions(F, theta, eta, single_p, workers);
      std::string config = "classify field=" + F.name + " eta=" + eta.str() + " p=" +
                           std::to_string(single_p) + " theta=" + theta.id;
      auto manifest = make_manifest("classify", config, 0, workers, {out_path});
      CsvReport rep(manifest,
                    {"p", "theta", "kind", "h", "witnesses", "m_p0", "order_D", "order_d"});
      std::string wit;
      for (const auto& [j, v] : cls.witnesses) {
        if (!wit.empty()) wit += ";";
        wit += std::to_string(j);
      }
      rep.add_row({std::to_string(single_p), theta.id, kind_name(cls.kind), std::to_string(cls.h),
                   wit, std::to_string(cls.m0), cls.order_D ? std::to_string(*cls.order_D) : "?",
                   cls.order_d ? std::to_string(*cls.order_d) : "?"});
      emit(out_path, rep.serialize());
    } else if (fu_cmd->parsed()) {
      auto F = resolve_field(field_name);
      auto eta = parse_algebraic(eta_text, F.n);
      auto hits = fixed_u_scan(F, eta, fixed_u, pmin, pmax, workers);
      std::string config = "fixed-u field=" + F.name + " eta=" + eta.str() + " u=" +
                           std::to_string(fixed_u) + " pmin=" + std::to_string(pmin) +
                           " pmax=" + std::to_string(pmax);
      auto manifest = make_manifest("fixed-u", config, 0, workers, {out_path});
      CsvReport rep(manifest, {"p", "theta", "u"});
      for (const auto& h : hits)
        rep.add_row({std::to_string(h.p), h.theta_id, std::to_string(h.u)});
      emit(out_path, rep.serialize());
    } else if (den_cmd->parsed()) {
      auto F = resolve_field(field_name);
      DensityConfig cfg;
      cfg.kind = density_kind_from_name(kind_text);
      cfg.p = single_p;
      cfg.samples = samples;
      cfg.seed = seed;
      cfg.workers = workers;
      cfg.theta_index = theta_index;
      cfg.component_indices = comp_idx;
      cfg.component_values = comp_val;
      if (cfg.kind == DensityKind::fixed_components && comp_idx.size() != comp_val.size())
        throw ConfigError("--components and --values must have equal length");
      auto rep0 = density_run(F, cfg);
      std::string config = "density field=" + F.name + " p=" + std::to_string(single_p) +
                           " kind=" + density_kind_name(cfg.kind) + " n=" +
                           std::to_string(samples) + " seed=" + std::to_string(seed);
      auto manifest = make_manifest("density", config, seed, workers, {out_path});
      CsvReport rep(manifest, {"name", "count", "N0", "frequency", "predicted", "sigma", "rel_dev"});
      for (const auto& row : rep0.rows)
        rep.add_row({row.name, std::to_string(row.count), std::to_string(rep0.accepted),
                     format_double(row.frequency), format_double(row.predicted),
                     format_double(row.sigma), format_double(row.deviation)});
      emit(out_path, rep.serialize());
    } else if (bin_cmd->parsed()) {
      if (bin_p < 3 || bin_m > bin_p - 1)
        throw ConfigError("binomial: need p >= 3 and m <= p-1");
      std::string config = "binomial p=" + std::to_string(bin_p) + " m=" + std::to_string(bin_m);
      auto manifest = make_manifest("binomial", config, 0, 1, {out_path});
      CsvReport rep(manifest, {"p", "m", "tail", "tail_exact", "tail_reduced"});
      double tl = binomial_tail(bin_p, bin_m);
      std::string ex = "-", rd = "-";
      if (bin_p <= 10000) {
        ex = format_double(binomial_tail_exact(bin_p, bin_m).get_d());
        rd = format_double(binomial_tail_reduced(bin_p, bin_m).get_d());
      }
      rep.add_row({std::to_string(bin_p), std::to_string(bin_m), format_double(tl), ex, rd});
      emit(out_path, rep.serialize());
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
          .count();
  std::fprintf(stderr, "done in %lld ms\n", (long long)ms);
  return 0;
}
