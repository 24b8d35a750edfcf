#include <algorithm>
#include <cmath>

#include "lgram/tensor.hpp"

namespace lgram {

Tensor Tensor::zeros(std::vector<std::string> spaces, std::vector<std::size_t> dims) {
  Tensor t;
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  t.spaces = std::move(spaces);
  t.dims = std::move(dims);
  t.data.assign(n, 0.0);
  return t;
}

std::size_t Tensor::offset(const std::vector<std::size_t>& idx) const {
  if (idx.size() != dims.size()) throw Error("tensor index has wrong rank");
  std::size_t off = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (idx[k] >= dims[k]) throw Error("tensor index out of range");
    off = off * dims[k] + idx[k];
  }
  return off;
}

double relative_error(const Tensor& a, const Tensor& b) {
  if (a.dims != b.dims) throw Error("relative_error: shape mismatch");
  double scale = 1.0, diff = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    scale = std::max({scale, std::fabs(a.data[i]), std::fabs(b.data[i])});
    diff = std::max(diff, std::fabs(a.data[i] - b.data[i]));
  }
  return diff / scale;
}

bool bit_equal(const Tensor& a, const Tensor& b) {
  return a.dims == b.dims && a.spaces == b.spaces && a.data == b.data;
}

nlohmann::json tensor_to_json(const Tensor& t) {
  nlohmann::json j;
  j["shape"] = t.spaces;
  j["dims"] = t.dims;
  j["data"] = t.data;
  return j;
}

Tensor tensor_from_json(const nlohmann::json& j, const std::map<std::string, std::size_t>& dims) {
  std::vector<std::string> spaces;
  std::vector<std::size_t> ds;
  // shape is either space names or bare sizes; bare sizes leave the spaces unnamed
  for (const auto& x : j.at("shape")) {
    if (x.is_string()) {
      auto s = x.get<std::string>();
      auto it = dims.find(s);
      if (it == dims.end()) throw Error("tensor refers to undimensioned space " + s);
      spaces.push_back(s);
      ds.push_back(it->second);
    } else {
      auto n = x.get<std::size_t>();
      if (n == 0) throw Error("tensor shape entries must be positive");
      spaces.push_back("");
      ds.push_back(n);
    }
  }
  Tensor t = Tensor::zeros(spaces, ds);
  auto data = j.at("data").get<std::vector<double>>();
  if (data.size() != t.data.size())
    throw Error("tensor data has " + std::to_string(data.size()) + " entries, shape needs " +
                std::to_string(t.data.size()));
  for (double x : data)
    if (!std::isfinite(x)) throw Error("tensor data must be finite");
  t.data = std::move(data);
  return t;
}

}  // namespace lgram
