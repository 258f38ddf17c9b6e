#pragma once

#include "tensor_spectra/tensor.hpp"

#include <json.hpp>

#include <fstream>
#include <string>
#include <variant>

namespace tenspec {

using Json = nlohmann::ordered_json;

/// A tensor over either exact field accepted on the wire.
using AnyTensor = std::variant<SparseTensor<Rat>, SparseTensor<GFp>>;

inline std::array<int, 3> tensor_dims(const AnyTensor& t) {
  return std::visit([](const auto& x) { return x.dims; }, t);
}
inline Support tensor_support(const AnyTensor& t) {
  return std::visit([](const auto& x) { return x.support(); }, t);
}
inline std::size_t tensor_nnz(const AnyTensor& t) {
  return std::visit([](const auto& x) { return x.entries.size(); }, t);
}

namespace detail {

inline Int json_int(const Json& v, const char* what) {
  if (v.is_number_integer()) return Int(v.get<long long>());
  if (v.is_string()) {
    try {
      return Int(v.get<std::string>());
    } catch (...) {
    }
  }
  throw input_error(std::string("expected integer for ") + what);
}

}  // namespace detail

inline AnyTensor tensor_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dims") || !j.contains("entries"))
    throw input_error("tensor json needs 'dims' and 'entries'");
  auto jd = j.at("dims");
  if (!jd.is_array() || jd.size() != 3) throw input_error("'dims' must be three integers");
  std::array<int, 3> dims{};
  for (int a = 0; a < 3; ++a) {
    long long d = jd.at(a).get<long long>();
    if (d < 1 || d > 1'000'000) throw input_error("tensor dimensions must be in [1, 1e6]");
    dims[a] = static_cast<int>(d);
  }
  std::string field = j.value("field", std::string("rational"));

  auto read_idx = [&](const Json& e) {
    auto ji = e.at("idx");
    if (!ji.is_array() || ji.size() != 3) throw input_error("'idx' must be three integers");
    Index3 idx{};
    for (int a = 0; a < 3; ++a) idx[a] = static_cast<int>(ji.at(a).get<long long>());
    return idx;
  };

  if (field == "rational") {
    SparseTensor<Rat> t(dims);
    for (auto& e : j.at("entries")) {
      Index3 idx = read_idx(e);
      if (t.entries.count(idx)) throw input_error("duplicate entry index in tensor json");
      Int num = detail::json_int(e.at("num"), "num");
      Int den = e.contains("den") ? detail::json_int(e.at("den"), "den") : Int(1);
      if (den == 0) throw input_error("zero denominator in tensor entry");
      t.check_index(idx);
      Rat v(num, den);
      if (v != 0) t.entries[idx] = v;
    }
    return t;
  }
  if (field == "gf") {
    if (!j.contains("p")) throw input_error("gf tensor needs prime 'p'");
    long long p = j.at("p").get<long long>();
    if (p < 2 || p >= (1ll << 31) || !is_prime_u64(static_cast<std::uint64_t>(p)))
      throw input_error("'p' must be a prime below 2^31");
    SparseTensor<GFp> t(dims);
    for (auto& e : j.at("entries")) {
      Index3 idx = read_idx(e);
      if (t.entries.count(idx)) throw input_error("duplicate entry index in tensor json");
      if (e.contains("den")) throw input_error("gf tensor entries take 'num' only");
      Int num = detail::json_int(e.at("num"), "num");
      Int r = num % p;
      if (r < 0) r += p;
      t.check_index(idx);
      GFp v(static_cast<std::int64_t>(r.convert_to<long long>()), static_cast<std::uint64_t>(p));
      if (!v.zero()) t.entries[idx] = v;
    }
    return t;
  }
  throw input_error("field must be 'rational' or 'gf'");
}

inline Json tensor_to_json(const SparseTensor<Rat>& t) {
  Json j;
  j["dims"] = {t.dims[0], t.dims[1], t.dims[2]};
  j["field"] = "rational";
  Json arr = Json::array();
  for (auto& [idx, v] : t.entries) {
    Json e;
    e["idx"] = {idx[0], idx[1], idx[2]};
    Int n = rat_num(v), d = rat_den(v);
    e["num"] = n.str();
    if (d != 1) e["den"] = d.str();
    // keep small values as plain numbers for readability
    if (n >= -(1ll << 53) && n <= (1ll << 53)) e["num"] = n.convert_to<long long>();
    if (d != 1 && d <= (1ll << 53)) e["den"] = d.convert_to<long long>();
    arr.push_back(e);
  }
  j["entries"] = arr;
  return j;
}

inline Json tensor_to_json(const SparseTensor<GFp>& t) {
  Json j;
  j["dims"] = {t.dims[0], t.dims[1], t.dims[2]};
  j["field"] = "gf";
  std::uint64_t p = 0;
  for (auto& [idx, v] : t.entries)
    if (v.p) p = v.p;
  j["p"] = p;
  Json arr = Json::array();
  for (auto& [idx, v] : t.entries) {
    Json e;
    e["idx"] = {idx[0], idx[1], idx[2]};
    e["num"] = v.v;
    arr.push_back(e);
  }
  j["entries"] = arr;
  return j;
}

inline Json tensor_to_json(const AnyTensor& t) {
  return std::visit([](const auto& x) { return tensor_to_json(x); }, t);
}

inline AnyTensor load_tensor_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open tensor file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw input_error("bad json in '" + path + "': " + e.what());
  }
  return tensor_from_json(j);
}

}  // namespace tenspec
