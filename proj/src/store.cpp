#include <fstream>
#include <random>

#include "lgram/tensor.hpp"

namespace lgram {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

std::size_t TensorStore::dim(const std::string& space) const {
  auto it = dims.find(space);
  if (it == dims.end()) throw Error("no dimension given for space " + space);
  return it->second;
}

Tensor TensorStore::get(const std::string& name, const std::vector<std::string>& spaces) const {
  auto it = tensors.find(name);
  if (it != tensors.end()) {
    bool ok = it->second.spaces.size() == spaces.size();
    for (std::size_t k = 0; ok && k < spaces.size(); ++k) {
      const std::string& have = it->second.spaces[k];
      ok = (have.empty() || have == spaces[k]) && it->second.dims[k] == dim(spaces[k]);
    }
    if (!ok) {
      std::string want, have;
      for (const auto& s : spaces) want += s + " ";
      for (std::size_t k = 0; k < it->second.spaces.size(); ++k)
        have += (it->second.spaces[k].empty() ? std::to_string(it->second.dims[k]) : it->second.spaces[k]) + " ";
      throw Error("tensor " + name + " has shape [ " + have + "] but the diagram needs [ " + want + "]");
    }
    Tensor t = it->second;
    t.spaces = spaces;
    return t;
  }
  if (!generate) throw Error("missing tensor for generator " + name);
  std::vector<std::size_t> ds;
  for (const auto& s : spaces) ds.push_back(dim(s));
  return random_tensor(name, spaces, ds, seed);
}

void TensorStore::put(const std::string& name, Tensor t) { tensors[name] = std::move(t); }

Tensor random_tensor(const std::string& name, const std::vector<std::string>& spaces,
                     const std::vector<std::size_t>& dims, std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL ^ fnv1a(name));
  Tensor t = Tensor::zeros(spaces, dims);
  for (auto& x : t.data) x = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return t;
}

nlohmann::json store_to_json(const TensorStore& s) {
  nlohmann::json j;
  j["dims"] = s.dims;
  j["seed"] = s.seed;
  j["tensors"] = nlohmann::json::object();
  for (const auto& [name, t] : s.tensors) j["tensors"][name] = {{"shape", t.spaces}, {"data", t.data}};
  return j;
}

TensorStore store_from_json(const nlohmann::json& j) {
  TensorStore s;
  s.dims = j.at("dims").get<std::map<std::string, std::size_t>>();
  for (const auto& [k, d] : s.dims)
    if (d == 0) throw Error("dimension of " + k + " must be positive");
  s.seed = j.value("seed", std::uint64_t{0});
  s.generate = j.value("generate", true);
  if (j.contains("tensors"))
    for (const auto& [name, t] : j.at("tensors").items()) {
      try {
        s.tensors.emplace(name, tensor_from_json(t, s.dims));
      } catch (const std::exception& e) {
        throw Error("tensor " + name + ": " + e.what());
      }
    }
  return s;
}

TensorStore load_store(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open tensor store " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("tensor store " + path + ": " + e.what());
  }
  return store_from_json(j);
}

Tensor closed_form_parasitic(const TensorStore& store) {
  Tensor p = store.get("papers", {"N"});
  Tensor b = store.get("Bob", {"N"});
  Tensor r = store.get("rejected", {"N", "S", "N"});
  Tensor g = store.get("reading", {"N", "S", "N"});
  std::size_t n = store.dim("N"), s = store.dim("S");
  Tensor out = Tensor::zeros({"N"}, {n});
  for (std::size_t o = 0; o < n; ++o) {
    double acc = 0.0;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t k = 0; k < s; ++k) {
        std::size_t off = (u * s + k) * n + o;
        acc += b.data[u] * r.data[off] * g.data[off];
      }
    out.data[o] = p.data[o] * acc;
  }
  return out;
}

}  // namespace lgram
