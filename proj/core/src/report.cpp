#include "besselcert/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

#include "besselcert/certifier.hpp"
#include "besselcert/sharpness.hpp"
#include "besselcert/zeros.hpp"

namespace besselcert {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* status_name(PointStatus s) {
  switch (s) {
    case PointStatus::Ok:
      return "ok";
    case PointStatus::Violation:
      return "violation";
    case PointStatus::Indeterminate:
      return "indeterminate";
  }
  return "?";
}

void csv_row(std::ostringstream& os, const std::string& id,
             const PointRecord& rec) {
  os << id << ',' << fmt17(rec.p) << ',' << fmt17(rec.x) << ','
     << fmt17(rec.margin) << ',' << fmt17(rec.err) << ','
     << status_name(rec.status) << '\n';
}

ordered_json record_json(const PointRecord& rec) {
  ordered_json j;
  j["p"] = rec.p;
  j["x"] = rec.x;
  j["margin"] = rec.margin;
  j["err_bound"] = rec.err;
  j["status"] = status_name(rec.status);
  return j;
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (!(cfg.tol >= 1e-14 && cfg.tol <= 1e-6)) {
    throw DomainError("tol must lie in [1e-14, 1e-6]");
  }
  if (cfg.p_steps < 2 || cfg.p_steps > 1000000 || cfg.x_steps < 2 ||
      cfg.x_steps > 1000000) {
    throw DomainError("grid steps must lie in [2, 1e6]");
  }
  for (const auto& id : cfg.instances) {
    find_instance(id);  // throws for unknown ids
  }
}

std::string to_csv(const std::vector<SweepReport>& reports) {
  std::ostringstream os;
  os << "instance_id,p,x,margin,err_bound,status\n";
  for (const auto& rep : reports) {
    for (const auto& rec : rep.violations) csv_row(os, rep.instance_id, rec);
    for (const auto& rec : rep.indeterminates) csv_row(os, rep.instance_id, rec);
    // Last row per instance is the min-margin point.
    csv_row(os, rep.instance_id, rep.min_record);
  }
  return os.str();
}

std::string to_json(const RunConfig& cfg,
                    const std::vector<SweepReport>& reports) {
  ordered_json root;
  ordered_json jcfg;
  jcfg["p_steps"] = cfg.p_steps;
  jcfg["x_steps"] = cfg.x_steps;
  jcfg["tol"] = cfg.tol;
  jcfg["exploration"] = cfg.exploration;
  jcfg["perturb"] = cfg.perturb;
  jcfg["perturb_alpha_offset"] = cfg.perturb_alpha_offset;
  root["config"] = jcfg;

  ordered_json results = ordered_json::array();
  double min_margin = std::numeric_limits<double>::infinity();
  std::string arg_id;
  double arg_p = 0.0, arg_x = 0.0;
  long total_ok = 0, total_violation = 0, total_indeterminate = 0;

  for (const auto& rep : reports) {
    ordered_json r;
    r["instance_id"] = rep.instance_id;
    r["exploration"] = rep.exploration;
    r["p_steps"] = rep.grid.p_steps;
    r["x_steps"] = rep.grid.x_steps;
    r["tol"] = rep.grid.tol;
    r["n_points"] = rep.n_points;
    r["n_ok"] = rep.n_ok;
    r["n_violation"] = rep.n_violation;
    r["n_indeterminate"] = rep.n_indeterminate;
    r["min_margin"] = rep.min_margin;
    r["argmin"] = {{"p", rep.argmin_p}, {"x", rep.argmin_x}};
    ordered_json viols = ordered_json::array();
    for (const auto& rec : rep.violations) viols.push_back(record_json(rec));
    r["violations"] = viols;
    ordered_json indet = ordered_json::array();
    for (const auto& rec : rep.indeterminates) indet.push_back(record_json(rec));
    r["indeterminate_points"] = indet;
    results.push_back(r);

    if (!rep.exploration) {
      total_ok += rep.n_ok;
      total_violation += rep.n_violation;
      total_indeterminate += rep.n_indeterminate;
    }
    if (rep.n_points > 0 && rep.min_margin < min_margin) {
      min_margin = rep.min_margin;
      arg_id = rep.instance_id;
      arg_p = rep.argmin_p;
      arg_x = rep.argmin_x;
    }
  }
  root["results"] = results;

  ordered_json summary;
  summary["min_margin"] = min_margin;
  summary["argmin"] = {{"instance", arg_id}, {"p", arg_p}, {"x", arg_x}};
  summary["counts"] = {{"ok", total_ok},
                       {"violation", total_violation},
                       {"indeterminate", total_indeterminate}};
  root["summary"] = summary;
  return root.dump(2) + "\n";
}

std::string constants_json(double p, const KernelConfig& cfg) {
  BetaT1Result b1 = beta_T1(p, 1e-12, cfg);
  ordered_json j;
  j["p"] = p;
  j["alpha_T1"] = alpha_T1(p, cfg);
  j["beta_T1"] = b1.value;
  j["beta_T1_err"] = b1.err;
  j["beta_T2"] = beta_T2(p, cfg);
  j["first_zero"] = b1.zero.zero;
  return j.dump(2) + "\n";
}

std::string zero_json(double p, double tol, const KernelConfig& cfg) {
  ZeroResult z = find_first_zero(p, tol, cfg);
  ordered_json j;
  j["p"] = p;
  j["lower"] = z.lower;
  j["upper"] = z.upper;
  j["zero"] = z.zero;
  j["tol_achieved"] = z.tol_achieved;
  return j.dump(2) + "\n";
}

std::string certify_json(double p, double x, int n_terms, double tol,
                         const KernelConfig& cfg) {
  (void)tol;
  ordered_json j;
  j["p"] = p;

  RatioVerdict rv;
  // Exact rational mode for the small denominators used on the command line.
  const double scaled = p * 10.0;
  if (p < 0.0 && std::abs(scaled - std::round(scaled)) < 1e-12) {
    rv = certify_ratio_monotone(
        t2_ratio_pair_exact(static_cast<std::int64_t>(std::round(scaled)), 10, cfg),
        n_terms, Direction::Decreasing);
  } else {
    rv = certify_ratio_monotone(t2_ratio_pair(p, cfg), n_terms,
                                Direction::Decreasing);
  }
  j["t2_ratio"] = {{"monotone_decreasing", rv.monotone},
                   {"strict", rv.strict},
                   {"first_nonstrict_n", rv.first_nonstrict_n},
                   {"exact_mode", rv.exact_mode}};

  double xq = x;
  if (xq < 0.0) {
    xq = 0.9 * find_first_zero(p, 1e-12, cfg).zero;
  }
  j["x"] = xq;

  bool all_pass = rv.monotone && (p >= 0.0 || rv.strict);
  if (p < 0.0) {
    ReplayVerdict a = replay_alpha_ratio(p, xq, std::min(n_terms, 200), cfg);
    ReplayVerdict bd = replay_B_D_ratios(p, xq, std::min(n_terms, 200), cfg);
    j["alpha_ratio_replay"] = {{"pass", a.pass}, {"detail", a.detail}};
    j["B_D_ratio_replay"] = {{"pass", bd.pass}, {"detail", bd.detail}};
    all_pass = all_pass && a.pass && bd.pass;

    TuranEnclosure t = turan_via_coefficients(p, xq, n_terms, cfg);
    j["turan"] = {{"lower", t.lower},
                  {"upper", t.upper},
                  {"positive", t.positive},
                  {"kernel_value", t.kernel_value},
                  {"kernel_agrees", t.kernel_agrees}};
    all_pass = all_pass && t.positive && t.kernel_agrees;
  }
  j["all_pass"] = all_pass;
  return j.dump(2) + "\n";
}

void write_report(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw std::runtime_error("rename failed: " + path);
  }
}

int workers_from_env() {
  const char* env = std::getenv("BESSELCERT_WORKERS");
  if (!env) return 1;
  const int n = std::atoi(env);
  return n >= 1 ? n : 1;
}

namespace {

int sweep_exit_status(const std::vector<SweepReport>& reports) {
  bool any_violation = false, any_indeterminate = false;
  for (const auto& rep : reports) {
    if (rep.exploration) continue;
    if (rep.n_violation > 0) any_violation = true;
    if (rep.n_indeterminate > 0) any_indeterminate = true;
  }
  if (any_violation) return 1;
  if (any_indeterminate) return 2;
  return 0;
}

}  // namespace

int run(const RunConfig& cfg) {
  try {
    switch (cfg.command) {
      case RunConfig::Command::Constants:
        write_report(cfg.output_path, constants_json(cfg.p_value, cfg.kernel));
        return 0;
      case RunConfig::Command::Zero:
        write_report(cfg.output_path,
                     zero_json(cfg.p_value, cfg.tol, cfg.kernel));
        return 0;
      case RunConfig::Command::Certify: {
        const std::string out = certify_json(cfg.p_value, cfg.x_value,
                                             cfg.n_terms, cfg.tol, cfg.kernel);
        write_report(cfg.output_path, out);
        const bool pass = out.find("\"all_pass\": true") != std::string::npos;
        return pass ? 0 : 1;
      }
      case RunConfig::Command::Verify:
      case RunConfig::Command::All: {
        validate(cfg);
        Perturbation perturb;
        perturb.factor = cfg.perturb;
        perturb.alpha_offset = cfg.perturb_alpha_offset;
        perturb.side = cfg.perturb_side;

        std::vector<const InequalityInstance*> selected;
        if (cfg.command == RunConfig::Command::All || cfg.instances.empty()) {
          for (const auto& inst : catalog()) selected.push_back(&inst);
        } else {
          for (const auto& id : cfg.instances) {
            selected.push_back(&find_instance(id));
          }
        }

        GridSpec grid;
        grid.p_steps = cfg.p_steps;
        grid.x_steps = cfg.x_steps;
        grid.tol = cfg.tol;

        std::vector<SweepReport> reports;
        for (const auto* inst : selected) {
          const bool frame = inst->family == MarginFamily::FrameOscillatory ||
                             inst->family == MarginFamily::FrameModified;
          Perturbation use = frame ? perturb : Perturbation{};
          reports.push_back(sweep(*inst, grid, cfg.kernel, use, cfg.workers));
        }

        if (cfg.exploration) {
          // The oscillatory theorem is proved for p <= -1/2; this sweeps the
          // untreated band (-1/2, 0) and reports without asserting.
          InequalityInstance ex = find_instance("T1");
          ex.id = "T1-EXPLORATION";
          ex.p_min = -0.5;
          ex.p_max = 0.0;
          ex.p_right_closed = false;
          SweepReport rep = sweep(ex, grid, cfg.kernel, Perturbation{}, cfg.workers);
          rep.exploration = true;
          reports.push_back(rep);
        }

        const std::string content = (cfg.format == RunConfig::Format::Csv)
                                        ? to_csv(reports)
                                        : to_json(cfg, reports);
        write_report(cfg.output_path, content);
        return sweep_exit_status(reports);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}

}  // namespace besselcert
