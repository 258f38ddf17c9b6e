#include "tensor_spectra/commutative_rank.hpp"
#include "tensor_spectra/dual_pair.hpp"
#include "tensor_spectra/rep_dims.hpp"
#include "tensor_spectra/slice_cover.hpp"
#include "tensor_spectra/support_polytope.hpp"
#include "tensor_spectra/tensor.hpp"
#include "tensor_spectra/tensor_json.hpp"
#include "tensor_spectra/tightness.hpp"
#include "tensor_spectra/weight_decomposition.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace tenspec;

constexpr const char* kVersion = "1.0.0";

struct Options {
  std::string tensor_path;
  std::string other_path;
  std::string xi_text;
  std::string theta_text;
  std::string k_text = "1,2,3,4";
  std::string sizes_text;
  std::string split_text;
  std::string shape_text;
  std::string out_path;
  std::string format = "json";
  std::string route = "both";
  double tol = 1e-8;
  long seed = 0;
  long budget = 10'000'000;
  long radius = 1'000'000;
  int res = 64;
  int k = 6;
  int n = 1;
  int lr_max = 0;
  int schur_m = 0;
  bool verify = false;
  bool sum_mode = false;
  std::string emit_dir;
};

int g_exit = 0;

void emit(const Options& opt, const std::string& text) {
  if (opt.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.out_path, std::ios::binary);
  if (!out) throw input_error("cannot open output path: " + opt.out_path);
  out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json triple_json(const std::array<double, 3>& a) { return Json::array({a[0], a[1], a[2]}); }

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t pos = 0;
      int v = std::stoi(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw input_error("not an integer list: " + text);
    }
  }
  if (out.empty()) throw input_error("empty integer list");
  return out;
}

std::array<int, 3> parse_int_triple(const std::string& text) {
  auto v = parse_int_list(text);
  if (v.size() != 3) throw input_error("expected three comma separated integers");
  return {v[0], v[1], v[2]};
}

struct LoadedTensor {
  AnyTensor t;
  std::array<int, 3> dims;
  Support supp;
};

LoadedTensor load(const std::string& path) {
  if (path.empty()) throw input_error("--tensor is required");
  LoadedTensor lt{load_tensor_file(path), {}, {}};
  lt.dims = tensor_dims(lt.t);
  lt.supp = tensor_support(lt.t);
  if (lt.supp.empty()) throw input_error("tensor has empty support");
  return lt;
}

Json support_json(const Support& s) {
  Json arr = Json::array();
  for (const auto& ix : s) arr.push_back(Json::array({ix[0], ix[1], ix[2]}));
  return arr;
}

Json witness_json(const FunctionalResult& res, std::array<int, 3> dims) {
  Json out = Json::object();
  Json p = Json::array();
  for (double v : res.witness) p.push_back(v);
  out["p"] = p;
  out["support"] = support_json(res.support);
  auto m = marginals(res.support, dims, res.witness);
  const char* names[3] = {"q1", "q2", "q3"};
  for (int i = 0; i < 3; ++i) {
    Json arr = Json::array();
    for (double v : m.q[i]) arr.push_back(v);
    out[names[i]] = arr;
  }
  return out;
}

std::string csv_escape(const std::string& s) { return s; }

void run_cover(const Options& opt) {
  auto lt = load(opt.tensor_path);
  Weighting xi = Weighting::parse(opt.xi_text);
  auto res = weighted_cover_value(lt.supp, lt.dims, xi, opt.budget);
  verify_cover(lt.supp, lt.dims, res.assignment, xi);
  double ub = general_ub(lt.dims, xi);
  if (opt.format == "csv") {
    std::ostringstream os;
    os << "value,exact,r1,r2,r3,general_ub,nodes\n";
    os << res.value << "," << (res.exact ? 1 : 0) << "," << res.r[0] << "," << res.r[1] << ","
       << res.r[2] << "," << ub << "," << res.nodes << "\n";
    emit(opt, os.str());
    return;
  }
  Json j;
  j["value"] = res.value;
  j["log2_value"] = std::log2(res.value);
  j["exact"] = res.exact;
  if (res.exact) j["exact_value"] = res.exact_value.str();
  j["r"] = Json::array({res.r[0], res.r[1], res.r[2]});
  Json wit;
  wit["assignment"] = Json::array();
  for (std::size_t s = 0; s < res.support.size(); ++s) {
    Json row;
    row["idx"] = Json::array({res.support[s][0], res.support[s][1], res.support[s][2]});
    row["axis"] = res.assignment[s] + 1;
    wit["assignment"].push_back(row);
  }
  const char* names[3] = {"axis_1", "axis_2", "axis_3"};
  for (int i = 0; i < 3; ++i) {
    Json arr = Json::array();
    for (int c : res.slices[i]) arr.push_back(c);
    wit[names[i]] = arr;
  }
  j["witness"] = wit;
  j["general_ub"] = ub;
  j["nodes"] = res.nodes;
  emit(opt, dump(j));
}

void run_tight(const Options& opt) {
  auto lt = load(opt.tensor_path);
  auto res = find_tight_witness(lt.supp, lt.dims, opt.radius, static_cast<std::uint64_t>(opt.seed));
  Json j;
  if (res.status == TightStatus::found) {
    if (opt.verify) verify_tight_witness(lt.supp, lt.dims, res.witness);
    j["status"] = "tight";
    Json wit;
    const char* names[3] = {"u1", "u2", "u3"};
    for (int i = 0; i < 3; ++i) {
      Json arr = Json::array();
      for (const Int& v : res.witness.u[i]) arr.push_back(v.str());
      wit[names[i]] = arr;
    }
    j["witness"] = wit;
  } else if (res.status == TightStatus::not_tight) {
    j["status"] = "not_tight";
    j["message"] = "definitely not tight";
    j["certificate"] = {{"axis", res.forced_axis + 1}, {"a", res.forced_a}, {"b", res.forced_b}};
    g_exit = 3;
  } else {
    j["status"] = "inconclusive";
    j["radius_used"] = res.radius_used;
    g_exit = 3;
  }
  if (opt.format == "csv") {
    std::ostringstream os;
    os << "status\n" << j["status"].get<std::string>() << "\n";
    emit(opt, os.str());
    return;
  }
  emit(opt, dump(j));
}

void run_zeta(const Options& opt) {
  auto lt = load(opt.tensor_path);
  ThetaWeights th = opt.theta_text.empty() ? ThetaWeights() : ThetaWeights::parse(opt.theta_text);
  auto res = support_functional_zeta(lt.supp, lt.dims, th, opt.tol);
  if (opt.format == "csv") {
    std::ostringstream os;
    os << "value,log2_value,certified_gap\n";
    os << res.value << "," << res.log2_value << "," << res.certified_gap << "\n";
    emit(opt, os.str());
    return;
  }
  Json j;
  j["value"] = res.value;
  j["log2_value"] = res.log2_value;
  j["witness"] = witness_json(res, lt.dims);
  j["certified_gap"] = res.certified_gap;
  emit(opt, dump(j));
}

void run_gxi(const Options& opt) {
  auto lt = load(opt.tensor_path);
  Weighting xi = Weighting::parse(opt.xi_text);
  if (opt.route != "primal" && opt.route != "dual" && opt.route != "both")
    throw input_error("--route must be primal, dual, or both");
  auto tight = find_tight_witness(lt.supp, lt.dims, opt.radius, static_cast<std::uint64_t>(opt.seed));
  bool upper_only = tight.status != TightStatus::found;
  Json j;
  double value = 0, log2v = 0;
  if (opt.route == "primal" || opt.route == "both") {
    auto p = awsr_primal(lt.supp, lt.dims, xi, opt.tol);
    j["primal"] = {{"value", p.value}, {"log2_value", p.log2_value}, {"certified_gap", p.certified_gap}};
    j["witness"] = witness_json(p, lt.dims);
    value = p.value;
    log2v = p.log2_value;
  }
  if (opt.route == "dual" || opt.route == "both") {
    auto d = awsr_dual(lt.supp, lt.dims, xi, opt.tol);
    j["dual"] = {{"value", d.value}, {"log2_value", d.log2_value}, {"certified_gap", d.certified_gap}};
    if (opt.route == "dual") {
      value = d.value;
      log2v = d.log2_value;
    }
  }
  j["value"] = value;
  j["log2_value"] = log2v;
  j["upper_bound_only"] = upper_only;
  if (opt.format == "csv") {
    std::ostringstream os;
    os << "value,log2_value,upper_bound_only\n";
    os << value << "," << log2v << "," << (upper_only ? 1 : 0) << "\n";
    emit(opt, os.str());
    return;
  }
  emit(opt, dump(j));
}

void run_minentropy(const Options& opt) {
  auto lt = load(opt.tensor_path);
  bool has_xi = !opt.xi_text.empty(), has_th = !opt.theta_text.empty();
  if (has_xi == has_th) throw input_error("pass exactly one of --xi or --theta");
  FunctionalResult res;
  std::string objective;
  if (has_xi) {
    res = min_entropy_g(lt.supp, lt.dims, Weighting::parse(opt.xi_text), opt.tol);
    objective = "min_entropy_g";
  } else {
    res = min_entropy_zeta(lt.supp, lt.dims, ThetaWeights::parse(opt.theta_text), opt.tol,
                           static_cast<std::uint64_t>(opt.seed));
    objective = "min_entropy_zeta";
  }
  if (opt.format == "csv") {
    std::ostringstream os;
    os << "objective,value,log2_value,certified_gap\n";
    os << objective << "," << res.value << "," << res.log2_value << "," << res.certified_gap << "\n";
    emit(opt, os.str());
    return;
  }
  Json j;
  j["objective"] = objective;
  j["value"] = res.value;
  j["log2_value"] = res.log2_value;
  j["witness"] = witness_json(res, lt.dims);
  j["certified_gap"] = res.certified_gap;
  emit(opt, dump(j));
}

void run_semistable(const Options& opt) {
  if (!opt.sizes_text.empty()) {
    auto sizes = parse_int_triple(opt.sizes_text);
    if (opt.split_text.empty()) throw input_error("--split is required with --sizes");
    auto split = parse_int_triple(opt.split_text);
    auto psg = destabilizing_1psg(sizes, split);
    auto blocks = mixed_block_weights(psg);
    Json j;
    j["sizes"] = Json::array({sizes[0], sizes[1], sizes[2]});
    j["split"] = Json::array({split[0], split[1], split[2]});
    Json lead = Json::array(), tail = Json::array();
    for (int i = 0; i < 3; ++i) {
      lead.push_back(psg.lead_weight[i].str());
      tail.push_back(psg.tail_weight[i].str());
    }
    j["lead_weight"] = lead;
    j["tail_weight"] = tail;
    Int mn = blocks.empty() ? Int(0) : blocks[0];
    Json bl = Json::array();
    for (const Int& b : blocks) {
      bl.push_back(b.str());
      mn = std::min(mn, b);
    }
    j["block_weights"] = bl;
    j["min_block_weight"] = mn.str();
    emit(opt, dump(j));
    return;
  }
  auto lt = load(opt.tensor_path);
  auto res = uniform_marginals_feasible(lt.supp, lt.dims);
  Json j;
  j["feasible"] = res.feasible;
  if (res.feasible) {
    Json wit = Json::array();
    for (const Rat& q : res.witness) wit.push_back(q.str());
    j["witness"] = wit;
    j["support"] = support_json(res.support);
    if (!opt.xi_text.empty()) {
      Weighting xi = Weighting::parse(opt.xi_text);
      j["semistable_lower_bound"] = semistable_lower_bound(lt.dims, xi);
    }
  } else {
    Json far = Json::array();
    for (const Rat& q : res.farkas) far.push_back(q.str());
    j["farkas"] = far;
    g_exit = 3;
  }
  if (opt.format == "csv") {
    std::ostringstream os;
    os << "feasible\n" << (res.feasible ? 1 : 0) << "\n";
    emit(opt, os.str());
    return;
  }
  emit(opt, dump(j));
}

void run_weights(const Options& opt) {
  auto lt = load(opt.tensor_path);
  Weighting xi = opt.xi_text.empty() ? Weighting() : Weighting::parse(opt.xi_text);
  auto ks = parse_int_list(opt.k_text);
  auto rows = convergence_profile(lt.supp, lt.dims, xi, ks, Int(opt.budget), opt.tol);
  if (opt.format == "json") {
    Json arr = Json::array();
    for (const auto& r : rows) {
      Json row;
      row["k"] = r.k;
      row["log2_m"] = r.log2_m;
      row["rate"] = r.rate;
      row["polytope_log2"] = r.polytope_log2;
      row["gap"] = r.gap;
      arr.push_back(row);
    }
    emit(opt, dump(arr));
    return;
  }
  std::ostringstream os;
  os << "k,log2_m,rate,polytope_log2,gap\n";
  for (const auto& r : rows)
    os << r.k << "," << r.log2_m << "," << r.rate << "," << r.polytope_log2 << "," << r.gap << "\n";
  emit(opt, os.str());
}

void run_dual(const Options& opt) {
  auto lt = load(opt.tensor_path);
  if (opt.res < 1 || opt.res > kMaxGridRes) throw input_error("--res out of range");
  auto fgrid = ThetaGridFn::build(opt.res, [&](const ThetaWeights& th) {
    return support_functional_zeta(lt.supp, lt.dims, th, opt.tol).log2_value;
  });
  if (!opt.other_path.empty()) {
    auto ot = load(opt.other_path);
    auto fT = ThetaGridFn::build(opt.res, [&](const ThetaWeights& th) {
      return support_functional_zeta(ot.supp, ot.dims, th, opt.tol).log2_value;
    });
    Support prod;
    std::array<int, 3> pdims{};
    if (opt.sum_mode) {
      prod = direct_sum_support(lt.supp, lt.dims, ot.supp);
      for (int i = 0; i < 3; ++i) pdims[i] = lt.dims[i] + ot.dims[i];
    } else {
      prod = support_product(lt.supp, lt.dims, ot.supp, ot.dims);
      for (int i = 0; i < 3; ++i) pdims[i] = lt.dims[i] * ot.dims[i];
    }
    auto fST = ThetaGridFn::build(opt.res, [&](const ThetaWeights& th) {
      return support_functional_zeta(prod, pdims, th, opt.tol).log2_value;
    });
    auto mk_g = [&](const ThetaGridFn& f) {
      return XiGridFn::build(opt.res, [&](const Weighting& x) { return g_from_f(f, x).value; });
    };
    auto rep = check_transfer(fgrid, fT, fST, mk_g(fgrid), mk_g(fT), mk_g(fST),
                              opt.sum_mode ? TransferMode::sum : TransferMode::product, 1e-3);
    Json j;
    j["mode"] = opt.sum_mode ? "sum" : "product";
    j["hypothesis_holds"] = rep.hypothesis_holds;
    j["conclusion_checked"] = rep.conclusion_checked;
    j["conclusion_holds"] = rep.conclusion_holds;
    j["worst_hypothesis_margin"] = rep.worst_hypothesis_margin;
    if (rep.conclusion_checked) j["worst_conclusion_margin"] = rep.worst_conclusion_margin;
    j["hypothesis_violations"] = rep.hypothesis_violation_count;
    j["conclusion_violations"] = rep.conclusion_violation_count;
    if (!rep.hypothesis_holds || !rep.conclusion_holds) g_exit = 3;
    emit(opt, dump(j));
    return;
  }
  bool has_xi = !opt.xi_text.empty(), has_th = !opt.theta_text.empty();
  if (has_xi == has_th) throw input_error("pass exactly one of --xi or --theta (or --other)");
  Json j;
  if (has_xi) {
    auto r = g_from_f(fgrid, Weighting::parse(opt.xi_text));
    j["transform"] = "g_from_f";
    j["log2_value"] = r.value;
    j["value"] = std::exp2(r.value);
    j["theta"] = triple_json(r.theta);
  } else {
    auto ggrid = XiGridFn::build(opt.res, [&](const Weighting& x) { return g_from_f(fgrid, x).value; });
    auto r = f_from_g(ggrid, ThetaWeights::parse(opt.theta_text));
    j["transform"] = "f_from_g";
    j["log2_value"] = r.value;
    j["value"] = std::exp2(r.value);
    j["xi"] = triple_json(r.xi);
  }
  if (opt.format == "csv") {
    std::ostringstream os;
    os << "transform,value,log2_value\n";
    os << j["transform"].get<std::string>() << "," << j["value"].get<double>() << ","
       << j["log2_value"].get<double>() << "\n";
    emit(opt, os.str());
    return;
  }
  emit(opt, dump(j));
}

std::string partition_text(const Partition& p) {
  std::string s;
  for (std::size_t i = 0; i < p.parts.size(); ++i) {
    if (i) s += "+";
    s += std::to_string(p.parts[i]);
  }
  return s;
}

void run_repdims(const Options& opt) {
  if (!opt.shape_text.empty()) {
    Partition lam(parse_int_list(opt.shape_text));
    auto rep = entropy_rate_check(lam, opt.n, opt.budget);
    Json j;
    j["shape"] = partition_text(lam);
    j["n"] = opt.n;
    j["scaled_shape"] = partition_text(rep.shape);
    j["dim"] = rep.dim.str();
    j["lhs"] = rep.lhs.str();
    j["rhs"] = rep.rhs.str();
    j["holds"] = rep.holds;
    if (!rep.holds) g_exit = 3;
    emit(opt, dump(j));
    return;
  }
  if (opt.lr_max > 0) {
    long pairs = 0;
    bool all = true;
    for (int a = 1; a <= opt.lr_max; ++a)
      for (int b = 1; b <= opt.lr_max; ++b)
        for (const auto& lam : partitions_of(a))
          for (const auto& mu : partitions_of(b)) {
            ++pairs;
            if (!lr_superadditivity_check(lam, mu).holds) all = false;
          }
    Json j;
    j["max_weight"] = opt.lr_max;
    j["pairs"] = pairs;
    j["holds"] = all;
    if (!all) g_exit = 3;
    emit(opt, dump(j));
    return;
  }
  std::ostringstream os;
  os << "partition,dim,lower,upper";
  if (opt.schur_m > 0) os << ",schur_bound";
  os << "\n";
  for (const auto& lam : partitions_of(opt.k)) {
    auto b = specht_bounds(lam);
    os << csv_escape(partition_text(lam)) << "," << specht_dim_exact(lam).str() << ","
       << b.lower.str() << "," << b.upper.str();
    if (opt.schur_m > 0) os << "," << schur_dim_bound(opt.schur_m, opt.k).str();
    os << "\n";
  }
  emit(opt, os.str());
}

void run_examples(const Options& opt) {
  struct Row {
    std::string name;
    SparseTensor<Rat> t;
  };
  std::vector<Row> rows;
  for (int n = 1; n <= 4; ++n) rows.push_back({"diag_" + std::to_string(n), diagonal_tensor(n)});
  rows.push_back({"mm_2_2_2", matmul_tensor(2, 2, 2)});
  rows.push_back({"mm_2_2_5", matmul_tensor(2, 2, 5)});
  rows.push_back({"w", w_tensor()});
  std::ostringstream os;
  os << "name,d1,d2,d3,nnz,cover_111,zeta_uniform\n";
  for (const auto& r : rows) {
    auto cov = weighted_cover_value(r.t.support(), r.t.dims, Weighting());
    auto z = support_functional_zeta(r.t.support(), r.t.dims, ThetaWeights(), 1e-9);
    os << r.name << "," << r.t.dims[0] << "," << r.t.dims[1] << "," << r.t.dims[2] << ","
       << r.t.support().size() << "," << cov.value << "," << z.value << "\n";
  }
  emit(opt, os.str());
  if (!opt.emit_dir.empty()) {
    for (const auto& r : rows) {
      std::ofstream f(opt.emit_dir + "/" + r.name + ".json", std::ios::binary);
      if (!f) throw input_error("cannot write into " + opt.emit_dir);
      f << tensor_to_json(AnyTensor(r.t)).dump(2) << "\n";
    }
  }
}

void run_info(const Options& opt) {
  Json j;
  j["name"] = "tenspec";
  j["version"] = kVersion;
  j["defaults"] = {{"tol", 1e-8}, {"seed", 0}, {"budget", 10'000'000}, {"grid_res", 64}};
  j["subcommands"] = Json::array({"cover", "tight", "zeta", "gxi", "minentropy", "semistable",
                                  "weights", "dual", "repdims", "examples", "info"});
  j["exit_codes"] = {{"ok", 0}, {"input_error", 2}, {"infeasible_or_inconclusive", 3}};
  emit(opt, dump(j));
}

void add_common(CLI::App* sub, Options& opt, bool tensor_required = true) {
  auto* t = sub->add_option("--tensor", opt.tensor_path, "tensor JSON file");
  if (tensor_required) t->required();
  sub->add_option("--tol", opt.tol, "numerical tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--seed", opt.seed, "RNG seed");
  sub->add_option("--budget", opt.budget, "work budget")->check(CLI::PositiveNumber);
  sub->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", opt.out_path, "write output to file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rank functionals of order-3 tensors over exact fields"};
  app.require_subcommand(1);
  Options opt;

  auto* cover = app.add_subcommand("cover", "weighted slice cover value with witness");
  add_common(cover, opt);
  cover->add_option("--xi", opt.xi_text, "axis weighting a,b,c")->required();
  cover->callback([&] { run_cover(opt); });

  auto* tight = app.add_subcommand("tight", "search for an injective zero-sum labeling");
  add_common(tight, opt);
  tight->add_option("--radius", opt.radius, "max coefficient radius")->check(CLI::PositiveNumber);
  tight->add_flag("--verify", opt.verify, "re-verify the witness before printing");
  tight->callback([&] { run_tight(opt); });

  auto* zeta = app.add_subcommand("zeta", "support functional at a simplex weight");
  add_common(zeta, opt);
  zeta->add_option("--theta", opt.theta_text, "simplex weights a,b,c (default uniform)");
  zeta->callback([&] { run_zeta(opt); });

  auto* gxi = app.add_subcommand("gxi", "asymptotic weighted slice rank");
  add_common(gxi, opt);
  gxi->add_option("--xi", opt.xi_text, "axis weighting a,b,c")->required();
  gxi->add_option("--route", opt.route, "primal, dual, or both");
  gxi->callback([&] { run_gxi(opt); });

  auto* mine = app.add_subcommand("minentropy", "min-entropy functionals");
  add_common(mine, opt);
  mine->add_option("--xi", opt.xi_text, "axis weighting for the rank form");
  mine->add_option("--theta", opt.theta_text, "simplex weights for the spectral form");
  mine->callback([&] { run_minentropy(opt); });

  auto* semi = app.add_subcommand("semistable", "uniform-marginal feasibility / destabilizing data");
  add_common(semi, opt, false);
  semi->add_option("--xi", opt.xi_text, "weighting for the feasible lower bound");
  semi->add_option("--sizes", opt.sizes_text, "axis sizes m1,m2,m3 for subgroup mode");
  semi->add_option("--split", opt.split_text, "leading block sizes r1,r2,r3");
  semi->callback([&] { run_semistable(opt); });

  auto* weights = app.add_subcommand("weights", "finite-power decomposition bounds");
  add_common(weights, opt);
  weights->add_option("--xi", opt.xi_text, "axis weighting a,b,c");
  weights->add_option("--k", opt.k_text, "comma list of powers");
  weights->callback([&] { run_weights(opt); });

  auto* dual = app.add_subcommand("dual", "grid transforms between simplex and weighting functions");
  add_common(dual, opt);
  dual->add_option("--xi", opt.xi_text, "evaluate the weighting-side transform here");
  dual->add_option("--theta", opt.theta_text, "evaluate the simplex-side transform here");
  dual->add_option("--res", opt.res, "grid resolution");
  dual->add_option("--other", opt.other_path, "second tensor: run the combination transfer check");
  dual->add_flag("--sum", opt.sum_mode, "transfer check in sum mode (direct sum)");
  dual->callback([&] { run_dual(opt); });

  auto* rep = app.add_subcommand("repdims", "symmetric group dimension tables and checks");
  rep->add_option("--k", opt.k, "partition weight for the table")->check(CLI::PositiveNumber);
  rep->add_option("--shape", opt.shape_text, "partition a,b,... for the growth check");
  rep->add_option("--n", opt.n, "scaling factor for the growth check")->check(CLI::PositiveNumber);
  rep->add_option("--lr-max", opt.lr_max, "exhaustive superadditivity up to this weight");
  rep->add_option("--schur-m", opt.schur_m, "append the polynomial block-count bound for GL_m");
  rep->add_option("--budget", opt.budget, "work budget")->check(CLI::PositiveNumber);
  rep->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  rep->add_option("--out", opt.out_path, "write output to file");
  rep->callback([&] { run_repdims(opt); });

  auto* ex = app.add_subcommand("examples", "reference table of built-in example tensors");
  ex->add_option("--emit-tensors", opt.emit_dir, "also write the tensors as JSON files here");
  ex->add_option("--out", opt.out_path, "write output to file");
  ex->callback([&] { run_examples(opt); });

  auto* info = app.add_subcommand("info", "tool metadata");
  info->add_option("--out", opt.out_path, "write output to file");
  info->callback([&] { run_info(opt); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return 2;
  } catch (const budget_error& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return g_exit;
}
