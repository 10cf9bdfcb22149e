#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <vector>

#include "doctest.h"
#include "priv/errors.hpp"
#include "priv/nn/checkpoint.hpp"
#include "priv/nn/losses.hpp"
#include "priv/nn/matrix.hpp"
#include "priv/nn/net.hpp"
#include "priv/nn/optim.hpp"
#include "priv/nn/train.hpp"
#include "priv/nn/vae.hpp"
#include "priv/rng.hpp"
#include "test_util.hpp"

using namespace priv;
using namespace priv::nn;
using testutil::rel_err;

TEST_CASE("splitmix64 matches the published reference sequence") {
  std::uint64_t s = 0;
  CHECK(splitmix64(s) == 0xe220a8397b1dcdafULL);
  CHECK(splitmix64(s) == 0x6e789e6aa1b965f4ULL);
  CHECK(splitmix64(s) == 0x06c45d188009454fULL);
  s = 1234567;
  CHECK(splitmix64(s) == 0x599ed017fb08fc85ULL);
  CHECK(splitmix64(s) == 0x2c73f08458540fa5ULL);
  CHECK(splitmix64(s) == 0x883ebce5a3f27c77ULL);
}

TEST_CASE("counter_mix is stateless and index-sensitive") {
  CHECK(counter_mix(42, 0) == 0x4a392efe5d661d02ULL);
  CHECK(counter_mix(42, 1) == 0xb7900283d70f3328ULL);
  CHECK(counter_mix(42, 0) == 0x4a392efe5d661d02ULL);
  CHECK(counter_mix(42, 0) != counter_mix(43, 0));
  const double u = counter_uniform(7, 9);
  CHECK(u >= 0.0);
  CHECK(u < 1.0);
  CHECK(u == counter_uniform(7, 9));
}

TEST_CASE("Rng streams are deterministic per seed") {
  Rng a(99), b(99), c(100);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t va = a.next_u64();
    all_equal = all_equal && va == b.next_u64();
    any_diff = any_diff || va != c.next_u64();
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("Rng uniform stays in range with plausible moments") {
  Rng rng(1);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::fabs(sum / n - 0.5) < 0.01);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform(-2.0, 3.0);
    REQUIRE(u >= -2.0);
    REQUIRE(u < 3.0);
  }
}

TEST_CASE("Rng normal has unit moments") {
  Rng rng(2);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  CHECK(std::fabs(mean) < 0.02);
  CHECK(std::fabs(sq / n - mean * mean - 1.0) < 0.03);
}

TEST_CASE("Rng below is bounded and roughly uniform") {
  Rng rng(3);
  std::vector<int> counts(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) {
    const std::uint64_t v = rng.below(7);
    REQUIRE(v < 7);
    ++counts[static_cast<std::size_t>(v)];
  }
  for (int c : counts) CHECK(std::fabs(c - n / 7.0) < 0.1 * n / 7.0);
}

TEST_CASE("Rng shuffle yields a permutation and differs by seed") {
  Rng rng(4);
  std::vector<std::size_t> p = rng.permutation(50);
  std::vector<bool> seen(50, false);
  for (std::size_t v : p) {
    REQUIRE(v < 50);
    REQUIRE(!seen[v]);
    seen[v] = true;
  }
  Rng rng2(4);
  CHECK(p == rng2.permutation(50));
  Rng rng3(5);
  CHECK(p != rng3.permutation(50));
}

TEST_CASE("matmul matches a hand-worked product") {
  Matrix a(2, 2), b(2, 2);
  a(0, 0) = 1; a(0, 1) = 2; a(1, 0) = 3; a(1, 1) = 4;
  b(0, 0) = 5; b(0, 1) = 6; b(1, 0) = 7; b(1, 1) = 8;
  const Matrix c = matmul(a, b);
  CHECK(c(0, 0) == 19);
  CHECK(c(0, 1) == 22);
  CHECK(c(1, 0) == 43);
  CHECK(c(1, 1) == 50);
  CHECK_THROWS_AS(matmul(a, Matrix(3, 2)), ShapeError);
}

TEST_CASE("transpose, broadcast, column sums, hadamard") {
  Matrix m(2, 3);
  for (std::size_t i = 0; i < m.size(); ++i) m.data[i] = static_cast<double>(i + 1);
  const Matrix t = transpose(m);
  CHECK(t.rows == 3);
  CHECK(t.cols == 2);
  CHECK(t(2, 1) == m(1, 2));

  Matrix row(1, 3);
  row(0, 0) = 10; row(0, 1) = 20; row(0, 2) = 30;
  const Matrix s = add_row_broadcast(m, row);
  CHECK(s(0, 0) == 11);
  CHECK(s(1, 2) == 36);
  CHECK_THROWS_AS(add_row_broadcast(m, Matrix(1, 2)), ShapeError);

  const Matrix cs = column_sums(m);
  CHECK(cs.rows == 1);
  CHECK(cs(0, 0) == 5);
  CHECK(cs(0, 2) == 9);

  const Matrix h = hadamard(m, m);
  CHECK(h(1, 1) == 25);

  Matrix bad = m;
  bad(0, 0) = std::nan("");
  CHECK(all_finite(m));
  CHECK(!all_finite(bad));
}

TEST_CASE("bce loss matches hand computation and clamps") {
  Matrix p(2, 1), t(2, 1);
  p(0, 0) = 0.8; p(1, 0) = 0.2;
  t(0, 0) = 1.0; t(1, 0) = 0.0;
  const LossResult r = bce_loss(p, t);
  CHECK(rel_err(r.value, -std::log(0.8)) < 1e-12);
  CHECK(rel_err(r.grad(0, 0), -0.625) < 1e-12);
  CHECK(rel_err(r.grad(1, 0), 0.625) < 1e-12);

  Matrix extreme(1, 2);
  extreme(0, 0) = 0.0;
  extreme(0, 1) = 1.0;
  Matrix labels(1, 2);
  labels(0, 0) = 1.0;
  labels(0, 1) = 0.0;
  const LossResult clamped = bce_loss(extreme, labels);
  CHECK(std::isfinite(clamped.value));
  CHECK(all_finite(clamped.grad));
}

TEST_CASE("mse loss matches hand computation") {
  Matrix p(1, 2), t(1, 2);
  p(0, 0) = 1.0; p(0, 1) = 2.0;
  const LossResult r = mse_loss(p, t);
  CHECK(r.value == 2.5);
  CHECK(r.grad(0, 0) == 1.0);
  CHECK(r.grad(0, 1) == 2.0);
}

TEST_CASE("loss gradients agree with finite differences") {
  Rng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    Matrix p = testutil::random_matrix(3, 2, rng, 0.05, 0.95);
    Matrix t = testutil::random_matrix(3, 2, rng, 0.0, 1.0);
    for (auto* loss : {&bce_loss, &mse_loss}) {
      const LossResult base = loss(p, t);
      for (std::size_t i = 0; i < p.size(); ++i) {
        const double orig = p.data[i];
        const double h = 1e-6;
        p.data[i] = orig + h;
        const double up = loss(p, t).value;
        p.data[i] = orig - h;
        const double down = loss(p, t).value;
        p.data[i] = orig;
        CHECK(rel_err((up - down) / (2 * h), base.grad.data[i]) < 1e-6);
      }
    }
  }
}

TEST_CASE("network rejects bad layer chains") {
  CHECK_THROWS_AS(Network({}, 0), ShapeError);
  CHECK_THROWS_AS(Network({{2, 3, Activation::relu}, {4, 1, Activation::sigmoid}}, 0), ShapeError);
  CHECK_THROWS_AS(Network({{0, 3, Activation::relu}}, 0), ShapeError);
}

TEST_CASE("network forward matches a hand-worked two-layer case") {
  Network net({{2, 2, Activation::relu}, {2, 1, Activation::sigmoid}}, 0);
  net.weight(0)(0, 0) = 1; net.weight(0)(0, 1) = -1;
  net.weight(0)(1, 0) = 0; net.weight(0)(1, 1) = 2;
  net.bias(0)(0, 0) = 0.5; net.bias(0)(0, 1) = -0.5;
  net.weight(1)(0, 0) = 1; net.weight(1)(1, 0) = 1;
  net.bias(1)(0, 0) = -4;
  Matrix x(1, 2);
  x(0, 0) = 1; x(0, 1) = 2;
  // z1 = [1.5, 2.5] -> relu unchanged; z2 = 1.5 + 2.5 - 4 = 0 -> sigmoid = 0.5
  const Matrix out = net.forward(x);
  CHECK(rel_err(out(0, 0), 0.5) < 1e-12);
}

TEST_CASE("network forward matches the independent oracle on random nets") {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d0 = 1 + rng.below(5);
    const std::size_t d1 = 1 + rng.below(5);
    const std::size_t d2 = 1 + rng.below(5);
    Network net({{d0, d1, Activation::relu}, {d1, d2, Activation::sigmoid}}, rng.next_u64());
    const Matrix x = testutil::random_matrix(3, d0, rng);
    const Matrix got = net.forward(x);
    const Matrix want = testutil::naive_forward(net, x);
    REQUIRE(got.same_shape(want));
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(rel_err(got.data[i], want.data[i]) < 1e-12);
  }
}

TEST_CASE("backward requires a cached forward pass") {
  Network net({{2, 1, Activation::identity}}, 7);
  CHECK_THROWS_AS(net.backward(Matrix(1, 1)), StateError);
}

TEST_CASE("backward accumulates gradients across calls") {
  Rng rng(5);
  Network net({{2, 2, Activation::sigmoid}}, 3);
  const Matrix x = testutil::random_matrix(4, 2, rng);
  const Matrix t = testutil::random_matrix(4, 2, rng, 0.0, 1.0);
  net.zero_grads();
  net.backward(mse_loss(net.forward(x), t).grad);
  const Matrix once = net.weight_grad(0);
  net.backward(mse_loss(net.forward(x), t).grad);
  for (std::size_t i = 0; i < once.size(); ++i) {
    CHECK(rel_err(net.weight_grad(0).data[i], 2.0 * once.data[i]) < 1e-12);
  }
  net.zero_grads();
  CHECK(net.weight_grad(0) == Matrix(2, 2));
}

TEST_CASE("analytic parameter gradients match finite differences on random nets") {
  Rng rng(31);
  int done = 0;
  while (done < 20) {
    const std::size_t layers = 1 + rng.below(3);
    std::vector<LayerSpec> specs;
    std::size_t d = 1 + rng.below(8);
    for (std::size_t l = 0; l < layers; ++l) {
      const std::size_t out = 1 + rng.below(8);
      const Activation act = static_cast<Activation>(rng.below(3));
      specs.push_back({d, out, act});
      d = out;
    }
    Network net(specs, rng.next_u64());
    const Matrix x = testutil::random_matrix(4, specs.front().in_dim, rng);
    if (testutil::near_relu_kink(net, x)) continue;
    const Matrix t = testutil::random_matrix(4, d, rng, 0.05, 0.95);
    const bool use_bce = specs.back().act == Activation::sigmoid && rng.uniform() < 0.5;
    auto loss_value = [&]() {
      const Matrix out = testutil::naive_forward(net, x);
      return (use_bce ? bce_loss(out, t) : mse_loss(out, t)).value;
    };
    auto fill = [&]() {
      net.zero_grads();
      const Matrix out = net.forward(x);
      net.backward((use_bce ? bce_loss(out, t) : mse_loss(out, t)).grad);
    };
    CHECK(testutil::gradcheck_worst_rel_err(net, loss_value, fill) < 1e-4);
    ++done;
  }
}

TEST_CASE("backward's input gradient matches finite differences") {
  Rng rng(37);
  Network net({{3, 5, Activation::sigmoid}, {5, 2, Activation::identity}}, rng.next_u64());
  Matrix x = testutil::random_matrix(2, 3, rng);
  const Matrix t = testutil::random_matrix(2, 2, rng);
  net.zero_grads();
  const Matrix dx = net.backward(mse_loss(net.forward(x), t).grad);
  const double h = 1e-5;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double orig = x.data[i];
    x.data[i] = orig + h;
    const double up = mse_loss(testutil::naive_forward(net, x), t).value;
    x.data[i] = orig - h;
    const double down = mse_loss(testutil::naive_forward(net, x), t).value;
    x.data[i] = orig;
    CHECK(rel_err((up - down) / (2 * h), dx.data[i]) < 1e-6);
  }
}

TEST_CASE("param_checksum tracks parameter bytes") {
  Network net({{2, 2, Activation::relu}}, 9);
  const std::uint64_t before = net.param_checksum();
  CHECK(before == net.param_checksum());
  net.weight(0)(0, 0) += 1e-12;
  CHECK(before != net.param_checksum());
}

TEST_CASE("adam first step matches the closed form") {
  AdamState st;
  st.lr = 0.1;
  Matrix p(1, 2), g(1, 2);
  p(0, 0) = 1.0; p(0, 1) = -2.0;
  g(0, 0) = 0.5; g(0, 1) = -0.25;
  adam_step(st, {&p}, {&g});
  // After bias correction the first step is lr * g / (|g| + eps).
  CHECK(rel_err(p(0, 0), 1.0 - 0.1 * 0.5 / (0.5 + 1e-8)) < 1e-9);
  CHECK(rel_err(p(0, 1), -2.0 + 0.1 * 0.25 / (0.25 + 1e-8)) < 1e-9);
  CHECK(st.step == 1);
}

TEST_CASE("adam trajectory matches an independent scalar implementation") {
  AdamState st;
  st.lr = 0.05;
  Matrix p(1, 1);
  p(0, 0) = 3.0;
  double ref = 3.0, m = 0.0, v = 0.0;
  for (int step = 1; step <= 25; ++step) {
    // Gradient of 0.5*(p-1)^2.
    Matrix g(1, 1);
    g(0, 0) = p(0, 0) - 1.0;
    adam_step(st, {&p}, {&g});
    const double gr = ref - 1.0;
    m = 0.9 * m + 0.1 * gr;
    v = 0.999 * v + 0.001 * gr * gr;
    const double mh = m / (1.0 - std::pow(0.9, step));
    const double vh = v / (1.0 - std::pow(0.999, step));
    ref -= 0.05 * mh / (std::sqrt(vh) + 1e-8);
    CHECK(rel_err(p(0, 0), ref) < 1e-12);
  }
}

TEST_CASE("optimizers reject non-finite values and bad rates") {
  AdamState st;
  Matrix p(1, 1), g(1, 1);
  g(0, 0) = std::nan("");
  CHECK_THROWS_AS(adam_step(st, {&p}, {&g}), NumericError);
  g(0, 0) = 1.0;
  CHECK_THROWS_AS(sgd_step({&p}, {&g}, 0.0), FormatError);
  sgd_step({&p}, {&g}, 0.5);
  CHECK(p(0, 0) == -0.5);
}

namespace {

VaeModel smooth_vae(std::uint64_t seed) {
  // Sigmoid hidden layers keep the loss surface smooth for finite differences.
  VaeModel m{Network({{3, 5, Activation::sigmoid}, {5, 4, Activation::identity}},
                     counter_mix(seed, 0)),
             Network({{2, 5, Activation::sigmoid}, {5, 3, Activation::identity}},
                     counter_mix(seed, 1)),
             2};
  m.validate();
  return m;
}

}  // namespace

TEST_CASE("vae validates wiring") {
  CHECK_THROWS_AS(VaeModel::make(0, 4, 2, 1), FormatError);
  VaeModel bad{Network({{3, 4, Activation::relu}}, 0), Network({{2, 3, Activation::relu}}, 1), 3};
  CHECK_THROWS_AS(bad.validate(), ShapeError);
  const VaeModel ok = VaeModel::make(3, 8, 2, 7);
  CHECK(ok.encoder.out_dim() == 4);
  CHECK(ok.decoder.in_dim() == 2);
  CHECK(ok.decoder.out_dim() == 3);
}

TEST_CASE("vae kl term matches hand values") {
  VaeModel m = smooth_vae(1);
  // Zero all encoder params so mu = 0, log_var = 0 -> KL = 0.
  for (Matrix* p : m.encoder.params()) p->data.assign(p->size(), 0.0);
  const Matrix x(2, 3);
  const Matrix noise(2, 2);
  CHECK(vae_loss_value(m, x, noise).kl == 0.0);
  // Bias the mu outputs to 1: every latent coordinate contributes
  // -0.5 * (1 + 0 - 1 - 1) = 0.5, so the mean is 0.5.
  m.encoder.bias(1)(0, 0) = 1.0;
  m.encoder.bias(1)(0, 1) = 1.0;
  CHECK(rel_err(vae_loss_value(m, x, noise).kl, 0.5) < 1e-12);
}

TEST_CASE("vae gradients match finite differences through the sampler") {
  Rng rng(41);
  VaeModel m = smooth_vae(rng.next_u64());
  const Matrix x = testutil::random_matrix(4, 3, rng, 0.0, 1.0);
  Matrix noise(4, 2);
  for (double& v : noise.data) v = rng.normal();

  auto loss_value = [&]() { return vae_loss_value(m, x, noise).total; };
  auto fill = [&]() {
    m.encoder.zero_grads();
    m.decoder.zero_grads();
    vae_loss_backward(m, x, noise);
  };
  CHECK(testutil::gradcheck_worst_rel_err(m.encoder, loss_value, fill) < 1e-4);
  CHECK(testutil::gradcheck_worst_rel_err(m.decoder, loss_value, fill) < 1e-4);
}

TEST_CASE("vae loss splits into reconstruction plus weighted kl") {
  Rng rng(43);
  VaeModel m = smooth_vae(rng.next_u64());
  const Matrix x = testutil::random_matrix(3, 3, rng, 0.0, 1.0);
  Matrix noise(3, 2);
  for (double& v : noise.data) v = rng.normal();
  const VaeLoss l = vae_loss_value(m, x, noise, 0.3);
  CHECK(rel_err(l.total, l.reconstruction + 0.3 * l.kl) < 1e-12);
}

TEST_CASE("reconstruction_errors equals a manual per-row recompute") {
  Rng rng(47);
  VaeModel m = VaeModel::make(3, 6, 2, rng.next_u64());
  const Matrix x = testutil::random_matrix(5, 3, rng, 0.0, 1.0);
  const std::vector<double> errs = reconstruction_errors(m, x);
  REQUIRE(errs.size() == 5);
  const Matrix recon = reconstruct_mean(m, x);
  for (std::size_t r = 0; r < 5; ++r) {
    double want = 0.0;
    for (std::size_t c = 0; c < 3; ++c) {
      const double d = recon(r, c) - x(r, c);
      want += d * d;
    }
    want /= 3.0;
    CHECK(rel_err(errs[r], want) < 1e-12);
  }
}

namespace {

struct Blobs {
  Matrix x;
  Matrix y;
};

Blobs make_blobs(std::size_t per_class, std::uint64_t seed) {
  Rng rng(seed);
  Blobs b{Matrix(2 * per_class, 2), Matrix(2 * per_class, 1)};
  for (std::size_t i = 0; i < 2 * per_class; ++i) {
    const double label = i < per_class ? 0.0 : 1.0;
    const double cx = label == 0.0 ? 0.2 : 0.8;
    b.x(i, 0) = cx + 0.08 * rng.normal();
    b.x(i, 1) = cx + 0.08 * rng.normal();
    b.y(i, 0) = label;
  }
  return b;
}

}  // namespace

TEST_CASE("train is deterministic and learns separable blobs") {
  const Blobs data = make_blobs(100, 123);
  TrainConfig cfg;
  cfg.epochs = 30;
  cfg.batch_size = 16;
  cfg.lr = 0.05;
  cfg.seed = 9;

  Network a({{2, 8, Activation::relu}, {8, 1, Activation::sigmoid}}, 17);
  Network b({{2, 8, Activation::relu}, {8, 1, Activation::sigmoid}}, 17);
  const std::vector<double> ha = train(a, data.x, data.y, cfg);
  const std::vector<double> hb = train(b, data.x, data.y, cfg);
  CHECK(ha == hb);
  CHECK(a.param_checksum() == b.param_checksum());
  REQUIRE(ha.size() == 30);
  CHECK(ha.back() < ha.front());
  CHECK(binary_accuracy(a, data.x, data.y) >= 0.95);

  Network c({{2, 8, Activation::relu}, {8, 1, Activation::sigmoid}}, 17);
  TrainConfig other = cfg;
  other.seed = 10;
  train(c, data.x, data.y, other);
  CHECK(c.param_checksum() != a.param_checksum());
}

TEST_CASE("train handles degenerate configs explicitly") {
  const Blobs data = make_blobs(10, 1);
  Network net({{2, 1, Activation::sigmoid}}, 2);
  const std::uint64_t before = net.param_checksum();
  TrainConfig cfg;
  cfg.epochs = 0;
  CHECK(train(net, data.x, data.y, cfg).empty());
  CHECK(net.param_checksum() == before);

  cfg.epochs = 1;
  cfg.batch_size = 0;
  CHECK_THROWS_AS(train(net, data.x, data.y, cfg), FormatError);
  cfg.batch_size = 4;
  cfg.lr = -1.0;
  CHECK_THROWS_AS(train(net, data.x, data.y, cfg), FormatError);
  cfg.lr = 0.01;
  CHECK_THROWS_AS(train(net, Matrix(0, 2), Matrix(0, 1), cfg), FormatError);
  CHECK_THROWS_AS(train(net, data.x, Matrix(3, 1), cfg), ShapeError);
}

TEST_CASE("train_vae reduces loss deterministically") {
  Rng rng(55);
  Matrix x(60, 3);
  // Structured rows: two repeated prototypes plus small jitter.
  for (std::size_t i = 0; i < x.rows; ++i) {
    const double base = i % 2 == 0 ? 0.2 : 0.8;
    for (std::size_t c = 0; c < 3; ++c) x(i, c) = base + 0.02 * rng.normal();
  }
  TrainConfig cfg;
  cfg.epochs = 40;
  cfg.batch_size = 16;
  cfg.lr = 0.02;
  cfg.loss = LossKind::mse;
  cfg.seed = 77;
  VaeModel a = VaeModel::make(3, 8, 2, 5);
  VaeModel b = VaeModel::make(3, 8, 2, 5);
  const std::vector<double> ha = train_vae(a, x, cfg);
  const std::vector<double> hb = train_vae(b, x, cfg);
  CHECK(ha == hb);
  CHECK(a.encoder.param_checksum() == b.encoder.param_checksum());
  CHECK(a.decoder.param_checksum() == b.decoder.param_checksum());
  REQUIRE(ha.size() == 40);
  CHECK(ha.back() < ha.front());
}

TEST_CASE("checkpoints round-trip bit-exactly") {
  Rng rng(61);
  Network net({{3, 4, Activation::relu}, {4, 2, Activation::sigmoid}}, rng.next_u64());
  const std::string path = testutil::temp_path("privlab_net.ckpt");
  save_network(net, path);
  Network loaded = load_network(path);
  CHECK(loaded.param_checksum() == net.param_checksum());
  REQUIRE(loaded.layer_count() == 2);
  CHECK(loaded.layers()[0].act == Activation::relu);
  const Matrix x = testutil::random_matrix(2, 3, rng);
  CHECK(loaded.forward(x) == net.forward(x));

  VaeModel vae = VaeModel::make(3, 6, 2, rng.next_u64());
  const std::string vpath = testutil::temp_path("privlab_vae.ckpt");
  save_vae(vae, vpath);
  VaeModel vloaded = load_vae(vpath);
  CHECK(vloaded.latent_dim == 2);
  CHECK(vloaded.encoder.param_checksum() == vae.encoder.param_checksum());
  CHECK(vloaded.decoder.param_checksum() == vae.decoder.param_checksum());
}

TEST_CASE("checkpoint loading rejects damage") {
  CHECK_THROWS_AS(load_network(testutil::temp_path("privlab_missing.ckpt")), FormatError);

  const std::string path = testutil::temp_path("privlab_bad.ckpt");
  Network net({{2, 2, Activation::identity}}, 1);
  save_network(net, path);
  CHECK_THROWS_AS(load_vae(path), FormatError);

  // Truncate mid-payload.
  {
    std::FILE* f = std::fopen(path.c_str(), "rb+");
    REQUIRE(f != nullptr);
    std::fseek(f, 0, SEEK_END);
    const long len = std::ftell(f);
    REQUIRE(len > 16);
    REQUIRE(::truncate(path.c_str(), len / 2) == 0);
    std::fclose(f);
  }
  CHECK_THROWS_AS(load_network(path), FormatError);
}
