#include "doctest.h"
#include "lgram/tensor.hpp"
#include "support.hpp"

using namespace lgram;

namespace {
const PolarSpace N{"N", false}, Nd{"N", true};
TensorStore store(std::size_t n, std::size_t s = 2) {
  TensorStore st;
  st.dims = {{"N", n}, {"S", s}};
  st.seed = 11;
  return st;
}
}  // namespace

TEST_CASE("identity and snake") {
  CHECK(bit_equal(eval_diagram(identity({N}), store(3)), testing::delta("N", 3, 2)));
  Diagram snake = compose(tensor_par(single(cap(N)), identity({N})), tensor_par(identity({N}), single(cup(Nd))));
  CHECK(bit_equal(eval_diagram(snake, store(4)), testing::delta("N", 4, 2)));
}

TEST_CASE("multiplication copies basis vectors") {
  auto st = store(3);
  Tensor mu = eval_diagram(single(spider("N", 2, 1)), st);
  CHECK(mu.at({1, 1, 1}) == 1.0);
  CHECK(mu.at({1, 2, 1}) == 0.0);
  CHECK(mu.at({1, 2, 2}) == 0.0);
}

TEST_CASE("oracle basics") {
  auto st = store(2);
  Tensor empty = oracle_eval(Diagram{}, st);
  CHECK(empty.rank() == 0);
  CHECK(empty.data.at(0) == 1.0);
  Tensor c = oracle_eval(single(cup(N)), st);
  CHECK(c.at({0, 1}) == 0.0);
  CHECK(c.at({0, 0}) == 1.0);
  // a closed loop counts the dimension
  CHECK(eval_diagram(compose(single(cap(N)), single(cup(N))), store(5)).data.at(0) == 5.0);
}

TEST_CASE("random tensors are reproducible and in range") {
  Tensor a = random_tensor("rejected", {"N", "S", "N"}, {3, 2, 3}, 42);
  Tensor b = random_tensor("rejected", {"N", "S", "N"}, {3, 2, 3}, 42);
  Tensor c = random_tensor("rejected", {"N", "S", "N"}, {3, 2, 3}, 43);
  CHECK(bit_equal(a, b));
  CHECK(!bit_equal(a, c));
  for (double x : a.data) CHECK((x >= 0.0 && x < 1.0));
}

TEST_CASE("store lookups") {
  TensorStore st = store(2);
  st.generate = false;
  CHECK_THROWS_WITH(st.get("papers", {"N"}), doctest::Contains("missing tensor"));
  Tensor t = Tensor::zeros({"N"}, {2});
  st.put("papers", t);
  CHECK(bit_equal(st.get("papers", {"N"}), t));
  CHECK_THROWS(st.get("papers", {"N", "N"}));
  TensorStore back = store_from_json(store_to_json(st));
  CHECK(bit_equal(back.get("papers", {"N"}), t));
  CHECK(back.dims == st.dims);
}

TEST_CASE("closed form") {
  TensorStore ones;
  ones.dims = {{"N", 2}, {"S", 2}};
  ones.generate = false;
  auto fill = [&](const std::string& name, std::vector<std::string> sp, std::vector<std::size_t> dims, double v) {
    Tensor t = Tensor::zeros(std::move(sp), std::move(dims));
    std::fill(t.data.begin(), t.data.end(), v);
    ones.put(name, t);
  };
  fill("papers", {"N"}, {2}, 1);
  fill("Bob", {"N"}, {2}, 1);
  fill("rejected", {"N", "S", "N"}, {2, 2, 2}, 1);
  fill("reading", {"N", "S", "N"}, {2, 2, 2}, 1);
  // sum over subject and sentence index: 2 * 2
  Tensor out = closed_form_parasitic(ones);
  CHECK(out.data == std::vector<double>{4.0, 4.0});
  fill("papers", {"N"}, {2}, 0);
  CHECK(closed_form_parasitic(ones).data == std::vector<double>{0.0, 0.0});
}

TEST_CASE("contraction engine agrees with the oracle on small random graphs") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 60; ++k) {
    Diagram d = testing::random_diagram(rng, 1 + k % 5);
    TensorStore st = store(2 + k % 2, 1 + k % 3);
    CHECK(relative_error(eval_diagram(d, st), oracle_eval(d, st)) <= 1e-12);
  }
}

TEST_CASE("relative error and json") {
  Tensor a = Tensor::zeros({"N"}, {2}), b = a;
  b.data[1] = 0.5;
  CHECK(relative_error(a, b) == 0.5);
  CHECK_THROWS(relative_error(a, Tensor::zeros({"N"}, {3})));
  Tensor c = tensor_from_json(tensor_to_json(b), {{"N", 2}});
  CHECK(bit_equal(b, c));
}
