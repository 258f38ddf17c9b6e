#include "tensor_spectra/support_polytope.hpp"
#include "tensor_spectra/tensor.hpp"
#include "tensor_spectra/weight_decomposition.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace tenspec;

namespace {
const Weighting kUnit({1.0, 1.0, 1.0});
}

TEST_CASE("combinatorial helpers") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(5, 6) == 0);
  CHECK(binomial(5, -1) == 0);
  CHECK(multinomial(4, {2, 1, 1}) == 12);
  CHECK(multinomial(3, {3, 0}) == 1);
  CHECK(multinomial(6, {2, 2, 2}) == 90);
  CHECK(count_types({2, 2, 2}, 2) == 27);
  CHECK(count_types({2, 3, 2}, 1) == 12);
  CHECK(log2_int(Int(8)) == Catch::Approx(3.0).margin(1e-12));
  CHECK_THROWS_AS(log2_int(Int(0)), input_error);
}

TEST_CASE("type enumeration is complete and budgeted") {
  long seen = 0;
  enumerate_types({2, 3, 2}, 3, [&](const TypeTriple& t) {
    ++seen;
    for (int i = 0; i < 3; ++i) {
      int sum = 0;
      for (int v : t.w[i]) sum += v;
      CHECK(sum == t.k);
    }
  });
  CHECK(Int(seen) == count_types({2, 3, 2}, 3));
  CHECK_THROWS_AS(enumerate_types({3, 3, 3}, 5, [](const TypeTriple&) {}, Int(100)),
                  budget_error);
  CHECK_THROWS_AS(enumerate_types({2, 2, 2}, 0, [](const TypeTriple&) {}), input_error);
}

TEST_CASE("component feasibility on the diagonal") {
  auto d = diagonal_tensor(2);
  TypeTriple balanced;
  balanced.k = 2;
  balanced.w = {std::vector<int>{1, 1}, std::vector<int>{1, 1}, std::vector<int>{1, 1}};
  auto cert = component_nonzero(d.support(), d.dims, balanced);
  REQUIRE(cert.has_value());
  CHECK(cert->at({1, 1, 1}) == 1);
  CHECK(cert->at({2, 2, 2}) == 1);

  TypeTriple impossible;
  impossible.k = 2;
  impossible.w = {std::vector<int>{2, 0}, std::vector<int>{0, 2}, std::vector<int>{2, 0}};
  CHECK_FALSE(component_nonzero(d.support(), d.dims, impossible).has_value());

  TypeTriple bad = balanced;
  bad.w[0] = {1, 1, 1};  // wrong length
  CHECK_THROWS_AS(component_nonzero(d.support(), d.dims, bad), input_error);
  bad = balanced;
  bad.w[1] = {2, 1};  // wrong sum
  CHECK_THROWS_AS(component_nonzero(d.support(), d.dims, bad), input_error);
  bad = balanced;
  bad.w[2] = {3, -1};  // negative entry
  CHECK_THROWS_AS(component_nonzero(d.support(), d.dims, bad), input_error);
}

TEST_CASE("component feasibility matches brute force") {
  std::mt19937_64 rng(503);
  for (int trial = 0; trial < 6; ++trial) {
    std::array<int, 3> dims{};
    Support s = oracle::random_support(rng, dims, 3, 5);
    for (int k = 1; k <= 3; ++k) {
      enumerate_types(dims, k, [&](const TypeTriple& t) {
        bool brute = oracle::component_nonzero_brute(s, k, t.w);
        auto got = component_nonzero(s, dims, t);
        CHECK(got.has_value() == brute);
        if (got) {
          // the certificate must realize exactly this type
          std::array<std::vector<int>, 3> w;
          for (int i = 0; i < 3; ++i) w[i].assign(dims[i], 0);
          int total = 0;
          for (const auto& [idx, mult] : *got) {
            CHECK(mult > 0);
            CHECK(std::find(s.begin(), s.end(), idx) != s.end());
            total += mult;
            for (int i = 0; i < 3; ++i) w[i][idx[i] - 1] += mult;
          }
          CHECK(total == k);
          CHECK(w == t.w);
        }
      });
    }
  }
}

TEST_CASE("finite-power values on the diagonal follow the central binomial") {
  auto d = diagonal_tensor(2);
  for (int k = 1; k <= 12; ++k) {
    auto m = m_xi_k(d.support(), d.dims, kUnit, k);
    REQUIRE(m.exact);
    CHECK(m.exact_value == binomial(k, k / 2));
    CHECK(m.exact_value <= Int(1) << static_cast<unsigned>(k));
  }
}

TEST_CASE("finite-power values on the rank-three example") {
  auto w = w_tensor();
  const std::vector<Int> expect{1, 1, 3, 4};  // k = 1..4, checked by hand enumeration
  for (int k = 1; k <= 4; ++k) {
    auto m = m_xi_k(w.support(), w.dims, kUnit, k);
    REQUIRE(m.exact);
    CHECK(m.exact_value == expect[k - 1]);
  }
  auto m3 = m_xi_k(w.support(), w.dims, kUnit, 3);
  CHECK(m3.witness.k == 3);
  int total = 0;
  for (const auto& [idx, mult] : m3.certificate) total += mult;
  CHECK(total == 3);
}

TEST_CASE("witness and certificate stay consistent") {
  auto w = w_tensor();
  for (const auto& xi : {kUnit, Weighting({1.0, 1.0, 0.75}), Weighting({1.0, 1.0, 0.0})}) {
    auto m = m_xi_k(w.support(), w.dims, xi, 4);
    // recompute the type from the certificate
    std::array<std::vector<int>, 3> got;
    for (int i = 0; i < 3; ++i) got[i].assign(w.dims[i], 0);
    int total = 0;
    for (const auto& [idx, mult] : m.certificate) {
      total += mult;
      for (int i = 0; i < 3; ++i) got[i][idx[i] - 1] += mult;
    }
    CHECK(total == 4);
    CHECK(got == m.witness.w);
    // and the value from the witness type
    double v = 1e300;
    for (int i : xi.active_axes()) v = std::min(v, log2_int(multinomial(4, m.witness.w[i])) / xi[i]);
    CHECK(m.log2_value == Catch::Approx(v).margin(1e-9));
  }
  auto frac = m_xi_k(w.support(), w.dims, Weighting({1.0, 1.0, 0.75}), 4);
  CHECK_FALSE(frac.exact);
}

TEST_CASE("finite powers are supermultiplicative") {
  for (const auto& t : {w_tensor(), diagonal_tensor(2)}) {
    std::vector<Int> m(7);
    for (int k = 1; k <= 6; ++k) m[k] = m_xi_k(t.support(), t.dims, kUnit, k).exact_value;
    for (int k = 1; k <= 6; ++k)
      for (int l = 1; k + l <= 6; ++l) CHECK(m[k + l] >= m[k] * m[l]);
  }
}

TEST_CASE("finite powers never beat the polytope value") {
  auto w = w_tensor();
  auto g = awsr_primal(w.support(), w.dims, kUnit, 1e-8);
  for (int k = 1; k <= 6; ++k) {
    auto m = m_xi_k(w.support(), w.dims, kUnit, k);
    CHECK(m.log2_value / k <= g.log2_value + g.certified_gap + 1e-9);
  }
}

TEST_CASE("convergence profile wiring") {
  auto w = w_tensor();
  auto rows = convergence_profile(w.support(), w.dims, kUnit, {1, 2, 3, 4});
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) {
    CHECK(r.rate == Catch::Approx(r.log2_m / r.k).margin(1e-12));
    CHECK(r.gap == Catch::Approx(r.polytope_log2 - r.rate).margin(1e-12));
    CHECK(r.gap >= -1e-6);
  }
  CHECK(rows[2].log2_m == Catch::Approx(log2_int(Int(3))).margin(1e-9));
}

TEST_CASE("budget and validation errors") {
  auto mm = matmul_tensor(2, 2, 5);  // 20 support points
  CHECK_THROWS_AS(m_xi_k(mm.support(), mm.dims, kUnit, 12, Int(1000)), budget_error);
  CHECK_THROWS_AS(m_xi_k({}, {2, 2, 2}, kUnit, 2), input_error);
  CHECK_THROWS_AS(m_xi_k(w_tensor().support(), {2, 2, 2}, kUnit, 0), input_error);
}
