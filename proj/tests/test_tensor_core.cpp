#include "tensor_spectra/commutative_rank.hpp"
#include "tensor_spectra/entropy.hpp"
#include "tensor_spectra/params.hpp"
#include "tensor_spectra/tensor.hpp"
#include "tensor_spectra/tensor_json.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>

using namespace tenspec;

TEST_CASE("sparse storage semantics") {
  SparseTensor<Rat> t({2, 3, 2});
  t.set(1, 2, 1, Rat(5));
  t.set(1, 2, 1, Rat(7));  // overwrite
  CHECK(t.at(1, 2, 1) == 7);
  CHECK(t.entries.size() == 1);
  t.set(1, 2, 1, Rat(0));  // zero deletes
  CHECK(t.entries.empty());
  CHECK(t.at(1, 2, 1) == 0);
  CHECK_THROWS_AS(t.set(0, 1, 1, Rat(1)), input_error);
  CHECK_THROWS_AS(t.set(3, 1, 1, Rat(1)), input_error);
  CHECK_THROWS_AS(t.set(1, 4, 1, Rat(1)), input_error);
}

TEST_CASE("example tensors have the expected shape") {
  auto d3 = diagonal_tensor(3);
  CHECK(d3.dims == std::array<int, 3>{3, 3, 3});
  CHECK(d3.entries.size() == 3);
  for (int i = 1; i <= 3; ++i) CHECK(d3.at(i, i, i) == 1);

  auto mm = matmul_tensor(2, 2, 5);
  CHECK(mm.dims == std::array<int, 3>{4, 10, 10});
  CHECK(mm.entries.size() == 20);

  auto mm1 = matmul_tensor(1, 1, 1);
  CHECK(mm1.dims == std::array<int, 3>{1, 1, 1});
  CHECK(mm1.entries.size() == 1);

  auto w = w_tensor();
  CHECK(w.dims == std::array<int, 3>{2, 2, 2});
  CHECK(w.entries.size() == 3);
  CHECK(w.at(1, 1, 2) == 1);
  CHECK(w.at(1, 2, 1) == 1);
  CHECK(w.at(2, 1, 1) == 1);
  CHECK(w.at(2, 2, 2) == 0);
}

TEST_CASE("flattening ranks of the standard examples") {
  for (int n = 1; n <= 4; ++n) {
    auto d = diagonal_tensor(n);
    for (int ax = 0; ax < 3; ++ax) CHECK(flattening_rank(d, ax) == static_cast<std::size_t>(n));
  }
  auto w = w_tensor();
  for (int ax = 0; ax < 3; ++ax) CHECK(flattening_rank(w, ax) == 2);
  auto mm = matmul_tensor(2, 2, 2);
  for (int ax = 0; ax < 3; ++ax) CHECK(flattening_rank(mm, ax) == 4);
  auto mm5 = matmul_tensor(2, 2, 5);
  CHECK(flattening_rank(mm5, 0) == 4);
  CHECK(flattening_rank(mm5, 1) == 10);
  CHECK(flattening_rank(mm5, 2) == 10);
}

TEST_CASE("products and sums of diagonals are diagonals") {
  auto k = kronecker(diagonal_tensor(2), diagonal_tensor(3));
  auto d6 = diagonal_tensor(6);
  CHECK(k.dims == d6.dims);
  CHECK(k.entries == d6.entries);

  auto s = direct_sum(diagonal_tensor(2), diagonal_tensor(3));
  auto d5 = diagonal_tensor(5);
  CHECK(s.dims == d5.dims);
  CHECK(s.entries == d5.entries);
}

TEST_CASE("flattening rank is multiplicative for products") {
  auto k = kronecker(w_tensor(), diagonal_tensor(2));
  for (int ax = 0; ax < 3; ++ax) CHECK(flattening_rank(k, ax) == 4);
}

TEST_CASE("support combinators match the tensor operations") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 8; ++trial) {
    auto a = oracle::random_rational_tensor(rng);
    auto b = oracle::random_rational_tensor(rng);

    auto sp = support_product(a.support(), a.dims, b.support(), b.dims);
    auto kp = kronecker(a, b).support();
    std::sort(sp.begin(), sp.end());
    std::sort(kp.begin(), kp.end());
    CHECK(sp == kp);

    auto ss = direct_sum_support(a.support(), a.dims, b.support());
    auto ds = direct_sum(a, b).support();
    std::sort(ss.begin(), ss.end());
    std::sort(ds.begin(), ds.end());
    CHECK(ss == ds);
  }
}

TEST_CASE("json round trip preserves tensors") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 6; ++trial) {
    auto t = oracle::random_rational_tensor(rng);
    t.set(1, 1, 1, Rat(-7, 3));  // make sure signs and denominators travel
    auto back = tensor_from_json(tensor_to_json(t));
    REQUIRE(std::holds_alternative<SparseTensor<Rat>>(back));
    auto& r = std::get<SparseTensor<Rat>>(back);
    CHECK(r.dims == t.dims);
    CHECK(r.entries == t.entries);
  }

  SparseTensor<GFp> g({2, 2, 2});
  g.set(1, 2, 1, GFp(3, 101));
  g.set(2, 2, 2, GFp(100, 101));
  auto back = tensor_from_json(tensor_to_json(g));
  REQUIRE(std::holds_alternative<SparseTensor<GFp>>(back));
  auto& gg = std::get<SparseTensor<GFp>>(back);
  CHECK(gg.dims == g.dims);
  CHECK(gg.at(1, 2, 1) == GFp(3, 101));
  CHECK(gg.at(2, 2, 2) == GFp(100, 101));
}

TEST_CASE("json rejects malformed tensors") {
  auto parse = [](const char* text) { return tensor_from_json(Json::parse(text)); };
  CHECK_THROWS_AS(parse(R"({"entries": []})"), input_error);
  CHECK_THROWS_AS(parse(R"({"dims": [2, 2], "entries": []})"), input_error);
  CHECK_THROWS_AS(parse(R"({"dims": [0, 2, 2], "entries": []})"), input_error);
  CHECK_THROWS_AS(parse(R"({"dims": [2, 2, 2], "field": "complex", "entries": []})"), input_error);
  CHECK_THROWS_AS(
      parse(R"({"dims": [2,2,2], "entries": [{"idx": [1,1,1], "num": 1}, {"idx": [1,1,1], "num": 2}]})"),
      input_error);
  CHECK_THROWS_AS(parse(R"({"dims": [2,2,2], "entries": [{"idx": [1,1,1], "num": 1, "den": 0}]})"),
                  input_error);
  CHECK_THROWS_AS(parse(R"({"dims": [2,2,2], "entries": [{"idx": [0,1,1], "num": 1}]})"), input_error);
  CHECK_THROWS_AS(parse(R"({"dims": [2,2,2], "entries": [{"idx": [3,1,1], "num": 1}]})"), input_error);
  CHECK_THROWS_AS(parse(R"({"dims": [2,2,2], "entries": [{"idx": [1,1], "num": 1}]})"), input_error);
  CHECK_THROWS(parse(R"({"dims": [2,2,2], "entries": [{"idx": [1,1,1]}]})"));  // num missing
  // gf specific
  CHECK_THROWS_AS(parse(R"({"dims": [2,2,2], "field": "gf", "entries": []})"), input_error);
  CHECK_THROWS_AS(parse(R"({"dims": [2,2,2], "field": "gf", "p": 6, "entries": []})"), input_error);
  CHECK_THROWS_AS(
      parse(R"({"dims": [2,2,2], "field": "gf", "p": 5, "entries": [{"idx": [1,1,1], "num": 1, "den": 2}]})"),
      input_error);
}

TEST_CASE("tensor files load and fail cleanly") {
  const char* path = "tenspec_test_tensor.json";
  {
    std::ofstream out(path);
    out << tensor_to_json(w_tensor()).dump();
  }
  auto t = load_tensor_file(path);
  CHECK(tensor_dims(t) == std::array<int, 3>{2, 2, 2});
  CHECK(tensor_nnz(t) == 3);
  CHECK(tensor_support(t).size() == 3);
  std::remove(path);

  CHECK_THROWS_AS(load_tensor_file("definitely_not_here.json"), input_error);
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK_THROWS_AS(load_tensor_file(path), input_error);
  std::remove(path);
}

TEST_CASE("entropy helpers") {
  CHECK(entropy({0.5, 0.5}) == Catch::Approx(1.0));
  CHECK(entropy({0.25, 0.25, 0.25, 0.25}) == Catch::Approx(2.0));
  CHECK(entropy({1.0}) == 0.0);
  CHECK(entropy({1.0, 0.0}) == 0.0);
  CHECK(binary_entropy(0.5) == Catch::Approx(1.0));
  CHECK(binary_entropy(1.0 / 3) == Catch::Approx(0.9182958340544896).epsilon(1e-12));
  CHECK(min_entropy({0.5, 0.25, 0.25}) == Catch::Approx(1.0));
  CHECK(min_entropy({1.0}) == 0.0);
}

TEST_CASE("axis weighting validation") {
  Weighting w({1.0, 0.5, 0.0});
  CHECK(w.active(0));
  CHECK(w.active(1));
  CHECK_FALSE(w.active(2));
  CHECK(w.active_axes() == std::vector<int>{0, 1});
  CHECK_THROWS_AS(Weighting({0.5, 0.5, 0.5}), input_error);  // max must be 1
  CHECK_THROWS_AS(Weighting({1.0, -0.1, 0.5}), input_error);
  CHECK_THROWS_AS(Weighting({1.0, 1.1, 0.5}), input_error);
  CHECK(Weighting::parse("1,1/2,0.25").xi == std::array<double, 3>{1.0, 0.5, 0.25});
  CHECK_THROWS_AS(Weighting::parse("1,1"), input_error);
  CHECK_THROWS_AS(Weighting::parse("1,1,1,1"), input_error);
  CHECK_THROWS_AS(Weighting::parse("1,x,1"), input_error);
}

TEST_CASE("axis probability validation") {
  ThetaWeights t({1.0, 0.0, 0.0});
  CHECK(t.support() == std::vector<int>{0});
  CHECK_THROWS_AS(ThetaWeights({0.5, 0.5, 0.5}), input_error);  // sum must be 1
  CHECK_THROWS_AS(ThetaWeights({-0.2, 0.6, 0.6}), input_error);
  ThetaWeights u({1.0 / 3, 1.0 / 3, 1.0 / 3});
  Weighting w({1.0, 1.0, 0.0});
  CHECK(dot(u, w) == Catch::Approx(2.0 / 3));
  CHECK_FALSE(theta_compatible(u, w));
  CHECK(theta_compatible(ThetaWeights({0.5, 0.5, 0.0}), w));
}

TEST_CASE("pencil rank of the standard examples") {
  CHECK(commutative_rank(w_tensor()).rank == 2);
  for (int n = 1; n <= 4; ++n) CHECK(commutative_rank(diagonal_tensor(n)).rank == static_cast<std::size_t>(n));
  SparseTensor<Rat> zero({2, 2, 2});
  CHECK(commutative_rank(zero).rank == 0);

  SparseTensor<GFp> wg({2, 2, 2});
  wg.set(1, 1, 2, GFp(1, 101));
  wg.set(1, 2, 1, GFp(1, 101));
  wg.set(2, 1, 1, GFp(1, 101));
  CHECK(commutative_rank(wg).rank == 2);
}

TEST_CASE("pencil rank is bounded by the matrix shape") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    auto t = oracle::random_rational_tensor(rng);
    auto r = commutative_rank(t, trial);
    CHECK(r.rank <= static_cast<std::size_t>(std::min(t.dims[0], t.dims[1])));
  }
}
