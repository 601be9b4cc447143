// Copyright 2026 The epalab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line front end: nash, qre-path, classify, figure1, transfer-check
// and verify.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "epa/acceptance.hpp"
#include "epa/auction.hpp"
#include "epa/empirical.hpp"
#include "epa/figure.hpp"
#include "epa/nash.hpp"
#include "epa/qre.hpp"
#include "epa/valuation.hpp"

namespace {

using json = nlohmann::ordered_json;
using epa::Rational;

struct GameArgs {
  std::vector<int> v;
  std::string variant = "wb";
  std::optional<int> p_bar;
  std::string gamma = "1/2";

  void add_to(CLI::App* app) {
    app->add_option("--v", v, "low and high value (even integers)")
        ->expected(2)
        ->required();
    app->add_option("--variant", variant, "wb or lb")
        ->check(CLI::IsMember({"wb", "lb"}));
    app->add_option("--pbar", p_bar, "bid cap (default v_high/2 + 2)");
    app->add_option("--gamma", gamma, "tie-break probability for the high agent");
  }
  epa::ValuationProfile profile() const {
    if (p_bar) return epa::ValuationProfile(v[0], v[1], *p_bar);
    return epa::ValuationProfile::minimum_cap(v[0], v[1]);
  }
  epa::Variant parsed_variant() const { return epa::parse_variant(variant); }
  Rational parsed_gamma() const { return epa::parse_rational(gamma); }
  epa::AuctionGame<Rational> game() const {
    return epa::AuctionGame<Rational>(profile(), parsed_variant(),
                                      parsed_gamma());
  }
};

struct OutputArgs {
  std::string out;
  bool json_stdout = false;

  void add_to(CLI::App* app) {
    app->add_option("--out", out, "write the JSON result to this path");
    app->add_flag("--json", json_stdout, "print JSON instead of text");
  }
  // Writes the document where requested; returns false if it could not.
  bool emit(const json& doc) const {
    if (json_stdout) std::cout << doc.dump(2) << "\n";
    if (!out.empty()) {
      std::ofstream f(out);
      if (!f) {
        std::cerr << "error: cannot write " << out << "\n";
        return false;
      }
      f << doc.dump(2) << "\n";
    }
    return true;
  }
};

json profile_json(const epa::ValuationProfile& v) {
  return {{"v_low", v.v_low()}, {"v_high", v.v_high()}, {"p_bar", v.p_bar()}};
}

std::string str(const Rational& r) { return epa::to_string(r); }

template <typename Scalar>
json dist_json(const epa::Distribution<Scalar>& d) {
  json out = json::array();
  for (Eigen::Index b = 0; b < d.size(); ++b) {
    if constexpr (epa::is_exact_v<Scalar>) {
      out.push_back(str(d(b)));
    } else {
      out.push_back(static_cast<double>(d(b)));
    }
  }
  return out;
}

template <typename Scalar>
json strategy_json(const epa::StrategyProfile<Scalar>& s) {
  return {{"low", dist_json(s.low)}, {"high", dist_json(s.high)}};
}

std::string bids_text(const std::vector<int>& bids) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < bids.size(); ++i) os << (i ? "," : "") << bids[i];
  os << "}";
  return os.str();
}

// ---------------------------------------------------------------------------

int cmd_nash(const GameArgs& g, const OutputArgs& o) {
  const auto game = g.game();
  const auto& v = game.profile();
  json doc;
  doc["command"] = "nash";
  doc["variant"] = epa::variant_name(game.variant());
  doc["gamma"] = str(game.gamma());
  doc["profile"] = profile_json(v);
  doc["equity_surplus"] = epa::equity_surplus(v);
  doc["nash_range"] = epa::nash_range(v);
  json eqs = json::array();
  for (const auto& pp : epa::enumerate_pure_nash(game)) {
    const auto rep = epa::is_nash(game, epa::to_profile<Rational>(pp, game.num_bids()));
    json e{{"low_bid", pp.low},
           {"high_bid", pp.high},
           {"payoff_low", str(rep.payoff_low)},
           {"payoff_high", str(rep.payoff_high)},
           {"efficient", rep.efficient}};
    e["separating_bid"] =
        rep.separating_bid ? json(*rep.separating_bid) : json(nullptr);
    eqs.push_back(e);
  }
  doc["pure_equilibria"] = eqs;
  json pay = json::array();
  for (const auto& p : epa::efficient_nash_payoffs(v)) {
    pay.push_back({str(p.low), str(p.high)});
  }
  doc["efficient_payoffs"] = pay;

  if (!o.json_stdout) {
    std::cout << epa::variant_name(game.variant()) << " v=(" << v.v_low() << ","
              << v.v_high() << ") pbar=" << v.p_bar()
              << " gamma=" << str(game.gamma()) << "\n"
              << "equity surplus: " << epa::equity_surplus(v) << "\n"
              << "Nash range: " << bids_text(epa::nash_range(v)) << "\n"
              << eqs.size() << " pure equilibria (low bid, high bid -> payoffs):\n";
    for (const auto& e : eqs) {
      std::cout << "  (" << e["low_bid"].get<int>() << ", "
                << e["high_bid"].get<int>() << ") -> ("
                << e["payoff_low"].get<std::string>() << ", "
                << e["payoff_high"].get<std::string>() << ")"
                << (e["efficient"].get<bool>() ? "" : " inefficient") << "\n";
    }
    std::cout << "efficient payoff set:";
    for (const auto& p : pay) {
      std::cout << " (" << p[0].get<std::string>() << ","
                << p[1].get<std::string>() << ")";
    }
    std::cout << "\n";
  }
  return o.emit(doc) ? 0 : 1;
}

struct QreArgs {
  double start = 0.1;
  double ratio = 1.3;
  double cap = 500.0;
  double extension_cap = 1e12;
  bool profiles = false;
};

int cmd_qre_path(const GameArgs& g, const QreArgs& q, const OutputArgs& o) {
  const auto game = g.game();
  epa::LimitOptions lim;
  lim.schedule = epa::default_lambda_schedule(q.start, q.ratio, q.cap);
  lim.extension_cap = q.extension_cap;
  const epa::LimitTrace trace =
      epa::trace_to_limit(game, epa::LogisticConfig{}, epa::PathOptions{}, lim);
  const auto allowed = epa::allowed_bids(game.profile(), game.variant());

  json doc;
  doc["command"] = "qre-path";
  doc["variant"] = epa::variant_name(game.variant());
  doc["gamma"] = str(game.gamma());
  doc["profile"] = profile_json(game.profile());
  json recs = json::array();
  for (const auto& r : trace.path.records) {
    json j{{"lambda", r.lambda}, {"residual", r.residual}, {"converged", r.converged}};
    j["separating_bid"] = r.payoff_determinant_bid ? json(*r.payoff_determinant_bid)
                                                   : json(nullptr);
    if (q.profiles) j["profile"] = strategy_json(r.profile);
    recs.push_back(j);
  }
  doc["records"] = recs;
  doc["extended_points"] = trace.extended_points;
  const auto& lim_rep = trace.limit.report;
  json limit{{"is_nash", trace.limit.converged},
             {"profile", strategy_json(trace.limit.profile)},
             {"max_regret", lim_rep.max_regret}};
  limit["separating_bid"] =
      lim_rep.separating_bid ? json(*lim_rep.separating_bid) : json(nullptr);
  limit["allowed"] = lim_rep.separating_bid && allowed.allows(*lim_rep.separating_bid);
  doc["limit"] = limit;
  doc["allowed_bids"] = allowed.allowed_bids;

  if (!o.json_stdout) {
    std::cout << "lambda      residual     p\n";
    for (const auto& r : trace.path.records) {
      std::printf("%-11.4g %-12.3g %s%s\n", r.lambda, r.residual,
                  r.payoff_determinant_bid
                      ? std::to_string(*r.payoff_determinant_bid).c_str()
                      : "-",
                  r.converged ? "" : "  (not converged)");
    }
    std::cout << "limit: " << (trace.limit.converged ? "Nash" : "not Nash");
    if (lim_rep.separating_bid) {
      std::cout << ", p=" << *lim_rep.separating_bid << " "
                << (allowed.allows(*lim_rep.separating_bid) ? "in" : "outside")
                << " allowed " << bids_text(allowed.allowed_bids);
    }
    std::cout << "\n";
  }
  if (!o.emit(doc)) return 1;
  return trace.limit.converged ? 0 : 3;
}

int cmd_classify(const GameArgs& g, bool witness, const OutputArgs& o) {
  const auto game = g.game();
  const auto& v = game.profile();
  const auto bounds = epa::allowed_bids(v, game.variant());
  json doc;
  doc["command"] = "classify";
  doc["variant"] = epa::variant_name(game.variant());
  doc["profile"] = profile_json(v);
  doc["active_case"] = epa::case_label(bounds.active_case, game.variant());
  doc["allowed_bids"] = bounds.allowed_bids;
  json rows = json::array();
  for (int p : epa::nash_range(v)) {
    const auto c = epa::classify_payoff(v, game.variant(), p);
    rows.push_back({{"p", p}, {"empirical", c.empirical}, {"reason", c.reason}});
  }
  doc["classification"] = rows;
  bool all_ok = true;
  json wit = json::array();
  if (witness) {
    for (int p : bounds.allowed_bids) {
      const auto seq = epa::witness_sequence(
          game, p, epa::default_witness_schedule(), epa::WitnessConfig{});
      all_ok = all_ok && seq.ok;
      json elems = json::array();
      for (const auto& w : seq.elements) {
        elems.push_back({{"case", static_cast<int>(w.kase)},
                         {"epsilon", w.epsilon},
                         {"t", w.t},
                         {"residual", static_cast<double>(w.residual)},
                         {"interior", w.interior},
                         {"monotone", w.monotonicity.holds},
                         {"distance_to_target",
                          static_cast<double>(w.distance_to_target)}});
      }
      wit.push_back({{"p", p},
                     {"ok", seq.ok},
                     {"failure", seq.failure},
                     {"final_distance", seq.final_distance},
                     {"target", strategy_json(seq.elements.empty()
                                                  ? epa::StrategyProfile<Rational>{}
                                                  : seq.elements.front().target)},
                     {"elements", elems}});
    }
    doc["witnesses"] = wit;
  }

  if (!o.json_stdout) {
    std::cout << epa::variant_name(game.variant()) << " v=(" << v.v_low() << ","
              << v.v_high() << ") pbar=" << v.p_bar() << "  case "
              << epa::case_label(bounds.active_case, game.variant())
              << "  allowed " << bids_text(bounds.allowed_bids) << "\n";
    for (const auto& r : rows) {
      std::printf("  p=%-3d %-13s %s\n", r["p"].get<int>(),
                  r["empirical"].get<bool>() ? "empirical" : "not empirical",
                  r["reason"].get<std::string>().c_str());
    }
    for (const auto& w : wit) {
      std::printf("  witness p=%d: %s, final distance %.3g%s%s\n",
                  w["p"].get<int>(), w["ok"].get<bool>() ? "ok" : "FAILED",
                  w["final_distance"].get<double>(),
                  w["ok"].get<bool>() ? "" : ", ",
                  w["failure"].get<std::string>().c_str());
    }
  }
  if (!o.emit(doc)) return 1;
  return all_ok ? 0 : 3;
}

int cmd_figure1(int v_high, const std::string& out) {
  const auto rows = epa::figure1_rows(v_high);
  if (rows.empty()) {
    std::cerr << "warning: no even v_low in (2, " << v_high << "); empty data\n";
  }
  const std::string csv = epa::figure1_csv(rows);
  if (out.empty()) {
    std::cout << csv;
    return 0;
  }
  std::ofstream f(out);
  if (!f) {
    std::cerr << "error: cannot write " << out << "\n";
    return 1;
  }
  f << csv;
  return f ? 0 : 1;
}

int cmd_transfer(const GameArgs& g, int t, std::optional<std::vector<int>> bids,
                 const OutputArgs& o) {
  const auto game = g.game();
  const auto& v = game.profile();
  const int low = bids ? (*bids)[0] : v.c_low() + t;
  const int high = bids ? (*bids)[1] : v.c_low() + t + 1;
  epa::check_bid(game, low);
  epa::check_bid(game, high);
  json doc;
  doc["command"] = "transfer-check";
  doc["variant"] = epa::variant_name(game.variant());
  doc["profile"] = profile_json(v);
  doc["t"] = t;
  doc["low_bid"] = low;
  doc["high_bid"] = high;
  int code = 0;
  try {
    const auto rep = epa::transfer_equilibrium(
        game, epa::pure_profile<Rational>(game.num_bids(), low, high), t);
    doc["accepted"] = true;
    doc["v_star"] = profile_json(rep.v_star);
    doc["nash_at_v"] = rep.nash_at_v;
    doc["payoff_low"] = str(rep.payoff_low);
    doc["payoff_in_band"] = rep.payoff_in_band;
    doc["transferred"] = rep.transferred;
    if (!rep.transferred) code = 3;
    if (!o.json_stdout) {
      std::cout << "v*=(" << rep.v_star.v_low() << "," << rep.v_star.v_high()
                << "): " << (rep.transferred ? "transfers" : "does not transfer")
                << ", Nash at v: " << (rep.nash_at_v ? "yes" : "no")
                << ", pi_low=" << str(rep.payoff_low)
                << (rep.payoff_in_band ? " in band" : " outside band") << "\n";
    }
  } catch (const epa::TransferRejected& e) {
    doc["accepted"] = false;
    doc["error"] = e.what();
    std::cerr << "rejected input: " << e.what() << "\n";
    code = 2;
  }
  if (!o.emit(doc)) return 1;
  return code;
}

struct VerifyArgs {
  int v_high_max = 16;
  std::vector<std::string> caps = {"minimum", "symmetric"};
  int fixed_p_bar = 0;
  std::vector<std::string> variants = {"wb", "lb"};
  std::string gamma = "1/2";
  double qre_start = 0.1;
  double qre_ratio = 1.3;
  double qre_cap = 500.0;
  double qre_extension_cap = 1e12;
  int witness_steps = 4;
  std::uint64_t seed = 20260101;
  int samples = 1000;
  int threads = 0;
  std::vector<std::string> only;
  std::string fault;
};

// Fault injection for testing the harness: widens the winner-bid set past
// its cutoff.
epa::EmpiricalBounds widened_bounds(const epa::ValuationProfile& v,
                                    epa::Variant var) {
  epa::EmpiricalBounds b = epa::allowed_bids(v, var);
  if (var == epa::Variant::kWinnerBid && b.allowed_bids.back() < v.c_high()) {
    b.allowed_bids.push_back(b.allowed_bids.back() + 1);
    b.bid_cutoff += 1;
  }
  return b;
}

int cmd_verify(const VerifyArgs& a, const OutputArgs& o) {
  epa::SweepConfig cfg;
  cfg.v_high_max = a.v_high_max;
  cfg.caps.clear();
  for (const auto& c : a.caps) cfg.caps.push_back(epa::parse_cap_rule(c));
  cfg.fixed_p_bar = a.fixed_p_bar;
  cfg.variants.clear();
  for (const auto& v : a.variants) cfg.variants.push_back(epa::parse_variant(v));
  cfg.gamma = epa::parse_rational(a.gamma);
  cfg.qre_start = a.qre_start;
  cfg.qre_ratio = a.qre_ratio;
  cfg.qre_cap = a.qre_cap;
  cfg.qre_extension_cap = a.qre_extension_cap;
  auto schedule = epa::default_witness_schedule();
  if (a.witness_steps < 1 || a.witness_steps > static_cast<int>(schedule.size())) {
    throw std::invalid_argument("witness-steps must lie in 1..4");
  }
  schedule.resize(a.witness_steps);
  cfg.witness_schedule = schedule;
  cfg.seed = a.seed;
  cfg.monotone_samples = a.samples;
  cfg.threads = a.threads;
  if (a.fault == "widen_wb") {
    cfg.bounds = widened_bounds;
  } else if (!a.fault.empty()) {
    throw std::invalid_argument("unknown fault: " + a.fault);
  }

  const auto results = epa::run_acceptance(cfg, a.only);
  json doc;
  doc["command"] = "verify";
  json c{{"v_high_max", cfg.v_high_max},
         {"p_bar_rules", a.caps},
         {"variants", a.variants},
         {"gamma", str(cfg.gamma)},
         {"qre_schedule", {{"start", cfg.qre_start},
                           {"ratio", cfg.qre_ratio},
                           {"cap", cfg.qre_cap},
                           {"extension_cap", cfg.qre_extension_cap}}},
         {"witness_steps", a.witness_steps},
         {"seed", cfg.seed},
         {"monotone_samples", cfg.monotone_samples}};
  if (std::find(a.caps.begin(), a.caps.end(), "fixed") != a.caps.end()) {
    c["fixed_p_bar"] = cfg.fixed_p_bar;
  }
  if (!a.fault.empty()) c["fault"] = a.fault;
  doc["config"] = c;
  json crit = json::array();
  std::optional<std::string> first_failure;
  for (const auto& r : results) {
    crit.push_back({{"id", r.id},
                    {"description", r.description},
                    {"status", r.passed ? "pass" : "fail"},
                    {"measured", r.measured},
                    {"tolerance", r.tolerance},
                    {"budget_seconds", r.budget_seconds},
                    {"detail", r.detail},
                    {"failures", r.failures}});
    if (!r.passed && !first_failure) first_failure = r.id;
    if (!o.json_stdout) {
      std::printf("%-4s %s  %s (%.2fs)\n", r.id.c_str(),
                  r.passed ? "PASS" : "FAIL", r.detail.c_str(), r.seconds);
      for (const auto& f : r.failures) std::printf("       - %s\n", f.c_str());
    }
  }
  doc["criteria"] = crit;
  doc["passed"] = !first_failure.has_value();
  if (!o.emit(doc)) return 1;
  if (first_failure) {
    std::cerr << "criterion " << *first_failure << " failed\n";
    return 1;
  }
  return 0;
}

// Fills options the command line left unset from a flat key = value file.
// Keys are option names without dashes; '_' and '-' are interchangeable.
void apply_config(CLI::App* app, const std::string& path) {
  std::ifstream probe(path);
  if (!probe) throw std::invalid_argument("cannot read config file " + path);
  for (const CLI::ConfigItem& item : CLI::ConfigTOML().from_file(path)) {
    if (!item.parents.empty()) {
      throw std::invalid_argument("config file must be flat, got section " +
                                  item.parents.front());
    }
    std::string name = item.name;
    std::replace(name.begin(), name.end(), '_', '-');
    if (name == "config") throw std::invalid_argument("config files do not nest");
    CLI::Option* opt = app->get_option_no_throw("--" + name);
    if (opt == nullptr) {
      throw std::invalid_argument("unknown config key: " + item.name);
    }
    if (opt->count() > 0) continue;
    for (const auto& value : item.inputs) opt->add_result(value);
    opt->run_callback();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extreme-price auction equilibrium tools"};
  app.require_subcommand(1);

  GameArgs nash_game;
  OutputArgs nash_out;
  auto* nash = app.add_subcommand("nash", "pure Nash equilibria and payoff set");
  nash_game.add_to(nash);
  nash_out.add_to(nash);

  GameArgs qre_game;
  QreArgs qre_args;
  OutputArgs qre_out;
  auto* qre = app.add_subcommand("qre-path", "trace the logistic QRE path");
  qre_game.add_to(qre);
  qre_out.add_to(qre);
  qre->add_option("--lambda-start", qre_args.start);
  qre->add_option("--lambda-ratio", qre_args.ratio);
  qre->add_option("--lambda-cap", qre_args.cap);
  qre->add_option("--extension-cap", qre_args.extension_cap,
                  "largest precision of the extended continuation");
  qre->add_flag("--profiles", qre_args.profiles, "include every profile in JSON");

  GameArgs cls_game;
  OutputArgs cls_out;
  bool cls_witness = false;
  auto* cls = app.add_subcommand("classify", "classify Nash payoffs as empirical");
  cls_game.add_to(cls);
  cls_out.add_to(cls);
  cls->add_flag("--witness", cls_witness, "construct a witness for each allowed bid");

  int fig_vhigh = 0;
  std::string fig_out;
  auto* fig = app.add_subcommand("figure1", "allowed bids per v_low as CSV");
  fig->add_option("--vhigh", fig_vhigh, "high value (even)")->required();
  fig->add_option("--out", fig_out, "CSV path (stdout if omitted)");

  GameArgs tr_game;
  OutputArgs tr_out;
  int tr_t = 0;
  std::optional<std::vector<int>> tr_bids;
  auto* tr = app.add_subcommand("transfer-check",
                                "transfer a neighbour-profile equilibrium");
  tr_game.add_to(tr);
  tr_out.add_to(tr);
  tr->add_option("--t", tr_t, "surplus step, 0 <= t < ES")->required();
  tr->add_option("--bids", tr_bids, "low and high pure bids")->expected(2);

  VerifyArgs ver;
  OutputArgs ver_out;
  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->option_defaults()->always_capture_default();
  std::string ver_config;
  verify->add_option("--config", ver_config, "flat key = value configuration file");
  verify->add_option("--vhigh-max", ver.v_high_max);
  verify->add_option("--pbar-rule", ver.caps, "minimum, symmetric or fixed");
  verify->add_option("--pbar", ver.fixed_p_bar, "cap for the fixed rule");
  verify->add_option("--variant", ver.variants);
  verify->add_option("--gamma", ver.gamma);
  verify->add_option("--qre-start", ver.qre_start);
  verify->add_option("--qre-ratio", ver.qre_ratio);
  verify->add_option("--qre-cap", ver.qre_cap);
  verify->add_option("--qre-extension-cap", ver.qre_extension_cap);
  verify->add_option("--witness-steps", ver.witness_steps);
  verify->add_option("--seed", ver.seed);
  verify->add_option("--samples", ver.samples);
  verify->add_option("--threads", ver.threads);
  verify->add_option("--only", ver.only, "criterion ids, e.g. A1 A2")->delimiter(',');
  verify->add_option("--fault", ver.fault, "inject a fault (widen_wb)");
  ver_out.add_to(verify);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*nash) return cmd_nash(nash_game, nash_out);
    if (*qre) return cmd_qre_path(qre_game, qre_args, qre_out);
    if (*cls) return cmd_classify(cls_game, cls_witness, cls_out);
    if (*fig) return cmd_figure1(fig_vhigh, fig_out);
    if (*tr) return cmd_transfer(tr_game, tr_t, tr_bids, tr_out);
    if (*verify) {
      if (!ver_config.empty()) apply_config(verify, ver_config);
      return cmd_verify(ver, ver_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
