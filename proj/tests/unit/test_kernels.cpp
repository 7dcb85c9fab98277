#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "oracles.hpp"
#include "gen.hpp"
#include "salbench/kernels.hpp"
#include "salbench/rng.hpp"

using namespace salbench;

TEST_CASE("reflect_index mirrors about the half-sample boundary") {
  for (int n : {1, 2, 5, 9}) {
    for (int i = -3 * n; i < 4 * n; ++i) CHECK(kernels::reflect_index(i, n) == oracle::mirror(i, n));
  }
}

TEST_CASE("gaussian taps are normalized and symmetric") {
  for (double s : {0.3, 1.0, 2.5, 7.2}) {
    const auto t = kernels::gaussian_taps(s);
    CHECK(t.size() == 2 * static_cast<std::size_t>(std::ceil(4 * s)) + 1);
    double sum = 0.0;
    for (double v : t) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    for (std::size_t i = 0; i < t.size(); ++i) CHECK(t[i] == t[t.size() - 1 - i]);
  }
  CHECK(kernels::gaussian_taps(0.0) == std::vector<double>{1.0});
  CHECK_THROWS(kernels::gaussian_taps(-1.0));
}

TEST_CASE("blur matches direct 2-D convolution and the serial reference") {
  gen::Engine e(11);
  for (int trial = 0; trial < 12; ++trial) {
    const int w = gen::integer(e, 3, 40), h = gen::integer(e, 3, 40);
    const double sigma = gen::real(e, 0.2, 6.0);
    const Map m = gen::random_map(e, w, h, -2.0, 5.0);
    const Map s = kernels::serial::blur(m, sigma);
    const Map p = kernels::parallel::blur(m, sigma);
    CHECK(s == p);
    const std::vector<double> in(m.values().begin(), m.values().end());
    const auto ref = oracle::gaussian_conv2d(in, w, h, sigma);
    double err = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) err = std::max(err, std::abs(ref[i] - p[i]));
    CHECK(err < 1e-12);
  }
}

TEST_CASE("moments: serial and parallel agree bit for bit") {
  gen::Engine e(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Map m = gen::random_map(e, gen::integer(e, 1, 300), gen::integer(e, 1, 300), -4.0, 9.0);
    const auto s = kernels::serial::moments(m);
    const auto p = kernels::parallel::moments(m);
    CHECK(s.mean == p.mean);
    CHECK(s.std == p.std);
    double mean = 0.0;
    for (double v : m.values()) mean += v;
    mean /= m.size();
    double var = 0.0;
    for (double v : m.values()) var += (v - mean) * (v - mean);
    CHECK(p.mean == doctest::Approx(mean).epsilon(1e-12));
    CHECK(p.std == doctest::Approx(std::sqrt(var / m.size())).epsilon(1e-10));
  }
}

TEST_CASE("Lab conversion of reference colours") {
  struct Case {
    Rgb rgb;
    double l, a, b;
  };
  // CIE reference values for sRGB primaries under D65.
  const Case cases[] = {{{255, 255, 255}, 100.0, 0.0, 0.0},
                        {{0, 0, 0}, 0.0, 0.0, 0.0},
                        {{255, 0, 0}, 53.2408, 80.0925, 67.2032},
                        {{0, 255, 0}, 87.7347, -86.1827, 83.1793},
                        {{0, 0, 255}, 32.2970, 79.1875, -107.8602}};
  RgbImage img(static_cast<int>(std::size(cases)), 1);
  for (std::size_t i = 0; i < std::size(cases); ++i) img[i] = cases[i].rgb;
  const auto lab = kernels::parallel::rgb_to_lab(img);
  for (std::size_t i = 0; i < std::size(cases); ++i) {
    CAPTURE(i);
    CHECK(lab.l[i] == doctest::Approx(cases[i].l).epsilon(1e-4));
    CHECK(std::abs(lab.a[i] - cases[i].a) < 0.01);
    CHECK(std::abs(lab.b[i] - cases[i].b) < 0.01);
  }
  const auto ser = kernels::serial::rgb_to_lab(img);
  CHECK(ser.l == lab.l);
  CHECK(ser.a == lab.a);
  CHECK(ser.b == lab.b);
}

TEST_CASE("auc_numerator equals the Mann-Whitney count") {
  gen::Engine e(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> pos(gen::integer(e, 1, 30)), neg(gen::integer(e, 1, 30));
    const int levels = gen::integer(e, 2, 8);
    for (auto& v : pos) v = gen::integer(e, 0, levels);
    for (auto& v : neg) v = gen::integer(e, 0, levels);
    const double mw = oracle::mann_whitney_auc(pos, neg);
    std::sort(pos.begin(), pos.end());
    std::sort(neg.begin(), neg.end());
    const auto num = kernels::auc_numerator(pos, neg);
    CHECK(static_cast<double>(num) / (2.0 * pos.size() * neg.size()) == doctest::Approx(mw).epsilon(1e-15));
  }
}

TEST_CASE("sampled_auc: parallel reproduces the serial reference") {
  gen::Engine e(8);
  const Map m = gen::tied_map(e, 30, 20, 12);
  const std::vector<double> values(m.values().begin(), m.values().end());
  const auto pos_idx = gen::distinct(e, values.size(), 25);
  std::vector<double> pos;
  std::vector<std::uint32_t> pool;
  const std::set<std::size_t> is_pos(pos_idx.begin(), pos_idx.end());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (is_pos.count(i)) pos.push_back(values[i]);
    else pool.push_back(static_cast<std::uint32_t>(i));
  }
  std::sort(pos.begin(), pos.end());
  const kernels::RocSampling s{pos, values, pool, 99};
  const auto a = kernels::serial::sampled_auc(s, 64);
  const auto b = kernels::parallel::sampled_auc(s, 64);
  CHECK(a == b);
  for (double v : a) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("derive_seed separates keys and uniform_index stays in range") {
  CHECK(derive_seed(1, {"a", "b"}) != derive_seed(1, {"ab"}));
  CHECK(derive_seed(1, {"a"}) != derive_seed(2, {"a"}));
  CHECK(derive_seed(1, {"a"}) == derive_seed(1, {"a"}));
  Rng rng(4);
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const auto v = uniform_index(rng, 7);
    REQUIRE(v < 7);
    ++hist[v];
  }
  for (int h : hist) CHECK(std::abs(h - 10000) < 500);
}
