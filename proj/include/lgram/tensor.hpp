#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "lgram/diagram.hpp"

namespace lgram {

// Dense row-major array; each axis is labelled with its space.
struct Tensor {
  std::vector<std::string> spaces;
  std::vector<std::size_t> dims;
  std::vector<double> data;

  static Tensor zeros(std::vector<std::string> spaces, std::vector<std::size_t> dims);
  std::size_t rank() const { return dims.size(); }
  std::size_t offset(const std::vector<std::size_t>& idx) const;
  double& at(const std::vector<std::size_t>& idx) { return data[offset(idx)]; }
  double at(const std::vector<std::size_t>& idx) const { return data[offset(idx)]; }
};

// max |a-b| / max(1, max|a|, max|b|); throws on shape mismatch.
double relative_error(const Tensor& a, const Tensor& b);
bool bit_equal(const Tensor& a, const Tensor& b);

nlohmann::json tensor_to_json(const Tensor& t);
Tensor tensor_from_json(const nlohmann::json& j, const std::map<std::string, std::size_t>& dims);

// Tensors for generator boxes, keyed by name. With `generate` set, missing
// names are filled from the seed so any diagram can be evaluated.
class TensorStore {
 public:
  std::map<std::string, std::size_t> dims;
  std::uint64_t seed = 0;
  std::map<std::string, Tensor> tensors;
  bool generate = true;

  std::size_t dim(const std::string& space) const;
  // Stored tensor (shape-checked) or a seeded random one.
  Tensor get(const std::string& name, const std::vector<std::string>& spaces) const;
  void put(const std::string& name, Tensor t);
};

// Uniform [0,1) entries from a 64-bit Mersenne twister keyed by seed and name.
Tensor random_tensor(const std::string& name, const std::vector<std::string>& spaces,
                     const std::vector<std::size_t>& dims, std::uint64_t seed);

nlohmann::json store_to_json(const TensorStore& s);
TensorStore store_from_json(const nlohmann::json& j);
TensorStore load_store(const std::string& path);

// Tensor of a single node over its legs (in ++ out).
Tensor node_tensor(const Node& n, const TensorStore& store);

// Output axes: diagram inputs, then outputs.
Tensor eval_diagram(const Diagram& d, const TensorStore& store);
Tensor oracle_eval(const Diagram& d, const TensorStore& store, double max_terms = 1e8);

// Direct loops for the relative clause with a parasitic gap:
// out[o] = papers[o] * sum_{u,s} Bob[u] rejected[u,s,o] reading[u,s,o].
Tensor closed_form_parasitic(const TensorStore& store);

}  // namespace lgram
