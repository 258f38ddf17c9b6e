#include "tensor_spectra/support_polytope.hpp"
#include "tensor_spectra/tensor.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace tenspec;

namespace {
const ThetaWeights kUniform;
const Weighting kUnit({1.0, 1.0, 1.0});
const double kH13 = 0.9182958340544896;  // entropy of (1/3, 2/3)
}  // namespace

TEST_CASE("entropy functional on the rank-three example") {
  auto w = w_tensor();
  auto z = support_functional_zeta(w.support(), w.dims, kUniform);
  CHECK(z.log2_value == Catch::Approx(kH13).margin(1e-7));
  CHECK(z.value == Catch::Approx(std::exp2(kH13)).margin(1e-6));
  CHECK(z.certified_gap < 1e-6);
  // witness is a distribution and reproduces the reported value
  double sum = 0;
  for (double p : z.witness) sum += p;
  CHECK(sum == Catch::Approx(1.0).margin(1e-9));
  auto m = marginals(z.support, w.dims, z.witness);
  double obj = 0;
  for (int i = 0; i < 3; ++i) obj += kUniform[i] * entropy(m.q[i]);
  CHECK(obj == Catch::Approx(z.log2_value).margin(1e-9));
}

TEST_CASE("entropy functional dominates a grid scan") {
  auto w = w_tensor();
  std::mt19937_64 rng(307);
  for (int trial = 0; trial < 5; ++trial) {
    std::array<double, 3> t{double(1 + rng() % 5), double(1 + rng() % 5), double(1 + rng() % 5)};
    double s = t[0] + t[1] + t[2];
    ThetaWeights th({t[0] / s, t[1] / s, t[2] / s});
    auto z = support_functional_zeta(w.support(), w.dims, th);
    double grid = oracle::grid_zeta_log2(w.support(), w.dims, th, 60);
    CHECK(z.log2_value + z.certified_gap + 1e-9 >= grid);  // grid points are feasible
    CHECK(z.log2_value >= grid - 0.05);                    // and the grid is not far off
  }
}

TEST_CASE("diagonal supports maximize at the uniform distribution") {
  for (int n = 2; n <= 4; ++n) {
    auto d = diagonal_tensor(n);
    auto z = support_functional_zeta(d.support(), d.dims, kUniform);
    CHECK(z.log2_value == Catch::Approx(std::log2(double(n))).margin(1e-6));
  }
}

TEST_CASE("asymptotic weighted value by both routes") {
  auto w = w_tensor();
  auto p = awsr_primal(w.support(), w.dims, kUnit, 1e-8);
  CHECK(p.value == Catch::Approx(std::exp2(kH13)).margin(1e-5));
  auto d = awsr_dual(w.support(), w.dims, kUnit, 1e-8);
  CHECK(d.value == Catch::Approx(std::exp2(kH13)).margin(1e-4));
  CHECK(d.value + d.certified_gap + 1e-9 >= p.value - 1e-6);  // weak duality band

  Weighting noz({1.0, 1.0, 0.0});
  CHECK(awsr_primal(w.support(), w.dims, noz, 1e-8).value == Catch::Approx(2.0).margin(1e-5));
  CHECK(awsr_dual(w.support(), w.dims, noz, 1e-8).value == Catch::Approx(2.0).margin(1e-4));
}

TEST_CASE("primal route dominates a grid scan") {
  auto w = w_tensor();
  for (const auto& xi : {kUnit, Weighting({1.0, 0.5, 1.0})}) {
    auto p = awsr_primal(w.support(), w.dims, xi, 1e-8);
    double grid = oracle::grid_awsr_log2(w.support(), w.dims, xi, 60);
    CHECK(p.log2_value + p.certified_gap + 1e-9 >= grid);
    CHECK(p.log2_value >= grid - 0.05);
  }
}

TEST_CASE("min entropy variants") {
  auto w = w_tensor();
  auto g = min_entropy_g(w.support(), w.dims, kUnit);
  CHECK(g.value == Catch::Approx(1.5).margin(1e-5));
  auto g2 = min_entropy_g(w.support(), w.dims, Weighting({1.0, 1.0, 0.0}));
  CHECK(g2.value == Catch::Approx(2.0).margin(1e-5));
  double grid = oracle::grid_min_entropy_g_log2(w.support(), w.dims, kUnit, 60);
  CHECK(g.log2_value + g.certified_gap + 1e-9 >= grid);

  auto z = min_entropy_zeta(w.support(), w.dims, kUniform);
  CHECK(z.value == Catch::Approx(std::exp2(2.0 / 3)).margin(1e-5));
  // pointwise below the Shannon version
  auto zs = support_functional_zeta(w.support(), w.dims, kUniform);
  CHECK(z.log2_value <= zs.log2_value + zs.certified_gap + 1e-9);
}

TEST_CASE("min entropy value never exceeds the entropy value on random supports") {
  std::mt19937_64 rng(311);
  for (int trial = 0; trial < 6; ++trial) {
    std::array<int, 3> dims{};
    Support s = oracle::random_support(rng, dims, 3, 6);
    auto z = support_functional_zeta(s, dims, kUniform);
    auto m = min_entropy_zeta(s, dims, kUniform);
    CHECK(m.log2_value <= z.log2_value + z.certified_gap + 1e-6);
    auto gp = awsr_primal(s, dims, kUnit, 1e-7);
    auto gm = min_entropy_g(s, dims, kUnit);
    CHECK(gm.log2_value <= gp.log2_value + gp.certified_gap + 1e-6);
  }
}

TEST_CASE("uniform marginals feasibility with exact certificates") {
  for (int n = 1; n <= 5; ++n) {
    auto d = diagonal_tensor(n);
    auto f = uniform_marginals_feasible(d.support(), d.dims);
    REQUIRE(f.feasible);
    auto m = marginals_exact(f.support, d.dims, f.witness);
    for (int i = 0; i < 3; ++i)
      for (int a = 0; a < n; ++a) CHECK(m[i][a] == Rat(1, n));
  }
  auto mm = matmul_tensor(2, 3, 4);
  CHECK(uniform_marginals_feasible(mm.support(), mm.dims).feasible);

  auto w = w_tensor();
  auto f = uniform_marginals_feasible(w.support(), w.dims);
  REQUIRE_FALSE(f.feasible);
  CHECK(verify_farkas(f.lp, f.farkas));
}

TEST_CASE("product supports compose supermultiplicatively") {
  std::mt19937_64 rng(313);
  for (int trial = 0; trial < 4; ++trial) {
    std::array<int, 3> da{}, db{};
    Support a = oracle::random_support(rng, da, 3, 4);
    Support b = oracle::random_support(rng, db, 3, 4);
    auto za = support_functional_zeta(a, da, kUniform);
    auto zb = support_functional_zeta(b, db, kUniform);
    Support pr = support_product(a, da, b, db);
    std::array<int, 3> dp{da[0] * db[0], da[1] * db[1], da[2] * db[2]};
    auto zp = support_functional_zeta(pr, dp, kUniform);
    double slack = za.certified_gap + zb.certified_gap + zp.certified_gap + 1e-6;
    CHECK(zp.log2_value >= za.log2_value + zb.log2_value - slack);
  }
}

TEST_CASE("direct sums interpolate between max and sum") {
  auto a = diagonal_tensor(2), b = diagonal_tensor(3);
  Support su = direct_sum_support(a.support(), a.dims, b.support());
  std::array<int, 3> ds{5, 5, 5};
  auto z = support_functional_zeta(su, ds, kUniform, 1e-9);
  CHECK(z.value == Catch::Approx(5.0).margin(1e-3));  // additive for diagonal pieces

  std::mt19937_64 rng(317);
  for (int trial = 0; trial < 4; ++trial) {
    std::array<int, 3> da{}, db{};
    Support sa = oracle::random_support(rng, da, 3, 4);
    Support sb = oracle::random_support(rng, db, 3, 4);
    auto za = support_functional_zeta(sa, da, kUniform);
    auto zb = support_functional_zeta(sb, db, kUniform);
    Support sm = direct_sum_support(sa, da, sb);
    std::array<int, 3> dm{da[0] + db[0], da[1] + db[1], da[2] + db[2]};
    auto zs = support_functional_zeta(sm, dm, kUniform);
    double slack = za.certified_gap + zb.certified_gap + zs.certified_gap + 1e-6;
    CHECK(zs.value >= std::max(za.value, zb.value) - 1e-3);
    CHECK(zs.log2_value <= std::log2(za.value + zb.value) + slack + 1e-3);
  }
}

TEST_CASE("field functional on tight supports") {
  auto w = w_tensor();
  auto f = field_quantum_functional(w.support(), w.dims, kUniform);
  CHECK(f.value == Catch::Approx(std::exp2(kH13)).margin(1e-3));

  auto d = diagonal_tensor(3);
  auto fd = field_quantum_functional(d.support(), d.dims, kUniform);
  CHECK(fd.value == Catch::Approx(3.0).margin(1e-3));

  Support nt = {{1, 1, 1}, {1, 1, 2}, {1, 2, 1}, {2, 1, 1}, {2, 2, 2}};
  CHECK_THROWS_AS(field_quantum_functional(nt, {2, 2, 2}, kUniform), input_error);
}

TEST_CASE("support validation") {
  CHECK_THROWS_AS(support_functional_zeta({}, {2, 2, 2}, kUniform), input_error);
  CHECK_THROWS_AS(support_functional_zeta({{1, 1, 3}}, {2, 2, 2}, kUniform), input_error);
  CHECK_THROWS_AS(awsr_primal({}, {2, 2, 2}, kUnit), input_error);
  CHECK_THROWS_AS(uniform_marginals_feasible({{3, 1, 1}}, {2, 2, 2}), input_error);
}
