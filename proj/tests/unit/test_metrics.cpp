#include <doctest.h>

#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "gen.hpp"
#include "oracles.hpp"
#include "salbench/error.hpp"
#include "salbench/metrics.hpp"
#include "salbench/score_table.hpp"
#include "salbench/scoring.hpp"

using namespace salbench;
using namespace salbench::metrics;
using corpus::FixationSet;
using corpus::RegionMask;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no salbench::Error thrown");
  return ErrorCode::InvalidArgument;
}

FixationSet fixations_at(const std::vector<std::size_t>& idx, int width) {
  FixationSet f;
  for (auto i : idx) f.points.push_back({static_cast<int>(i) % width, static_cast<int>(i) / width});
  return f;
}

AurocOptions enumerate() { return {1, 0, AurocMode::Enumerate}; }

}  // namespace

TEST_CASE("NSS hand oracle and trivial cases") {
  Map m(3, 3, 0.0);
  m.at(1, 1) = 9.0;
  FixationSet centre{{{1, 1}}};
  CHECK(std::abs(nss(m, &centre).value - std::sqrt(8.0)) < 1e-9);

  // Fixations on pixels equal to the map mean.
  Map z(2, 2);
  z.at(0, 0) = 0;
  z.at(1, 0) = 1;
  z.at(0, 1) = 2;
  z.at(1, 1) = 1;
  FixationSet at_mean{{{1, 0}, {1, 1}}};
  CHECK(nss(z, &at_mean).value == 0.0);

  CHECK(code_of([] {
          FixationSet f{{{0, 0}}};
          nss(Map(4, 4, 2.0), &f);
        }) == ErrorCode::DegenerateMap);
  CHECK(code_of([&] {
          FixationSet f;
          nss(m, &f);
        }) == ErrorCode::EmptyGroundTruth);
  const auto s = nss(m, &centre);
  CHECK(s.reps == 1);
  CHECK(s.metric == MetricId::NSS);
}

TEST_CASE("NSS keeps duplicate fixations and averages every mask pixel") {
  gen::Engine e(2);
  const Map m = gen::random_map(e, 6, 5);
  double mean = 0, var = 0;
  for (double v : m.values()) mean += v;
  mean /= m.size();
  for (double v : m.values()) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / m.size());
  FixationSet dup{{{1, 1}, {1, 1}, {4, 2}}};
  const double expect = ((m.at(1, 1) - mean) * 2 + (m.at(4, 2) - mean)) / (3 * sd);
  CHECK(nss(m, &dup).value == doctest::Approx(expect).epsilon(1e-12));

  RegionMask r{Mask(6, 5, 0)};
  r.mask.at(0, 0) = r.mask.at(5, 4) = r.mask.at(2, 3) = 1;
  const double er = ((m.at(0, 0) - mean) + (m.at(5, 4) - mean) + (m.at(2, 3) - mean)) / (3 * sd);
  CHECK(nss(m, &r).value == doctest::Approx(er).epsilon(1e-12));
  CHECK(nss(m, &r).gt == GtKind::Regions);
}

TEST_CASE("NSS is invariant under positive affine transforms") {
  gen::Engine e(77);
  for (int t = 0; t < 1000; ++t) {
    const int w = gen::integer(e, 2, 24), h = gen::integer(e, 2, 24);
    const Map m = gen::random_map(e, w, h);
    const auto fix = fixations_at(gen::distinct(e, m.size(), gen::integer(e, 1, 5)), w);
    const double a = std::exp(gen::real(e, -3.0, 3.0)), b = gen::real(e, -100.0, 100.0);
    Map t2 = m;
    for (auto& v : t2.values()) v = a * v + b;
    CHECK(std::abs(nss(m, &fix).value - nss(t2, &fix).value) < 1e-9);
  }
}

TEST_CASE("AUROC of an indicator map over its own fixations is exactly one") {
  gen::Engine e(4);
  for (std::uint64_t seed : {0ull, 1ull, 99ull, 123456789ull}) {
    Map m(32, 24, 0.0);
    const auto idx = gen::distinct(e, m.size(), 15);
    for (auto i : idx) m[i] = 1.0;
    const auto fix = fixations_at(idx, 32);
    CHECK(auroc(m, &fix, {100, seed}).value == 1.0);
  }
}

TEST_CASE("enumeration mode matches the brute-force oracle on 4x4 fixtures") {
  gen::Engine e(31);
  for (int t = 0; t < 100; ++t) {
    const Map m = t % 2 ? gen::random_map(e, 4, 4) : gen::tied_map(e, 4, 4, 4);
    const auto pos = gen::distinct(e, 16, static_cast<std::size_t>(gen::integer(e, 1, 3)));
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < 16; ++i)
      if (std::find(pos.begin(), pos.end(), i) == pos.end()) pool.push_back(i);
    const std::vector<double> values(m.values().begin(), m.values().end());
    const auto fix = fixations_at(pos, 4);
    const auto s = auroc(m, &fix, enumerate());
    CHECK(std::abs(s.value - oracle::enumerated_auroc(values, pos, pool)) < 1e-12);
  }
  const Map m(4, 4, 0.0);
  const auto fix = fixations_at({0, 5}, 4);
  CHECK(auroc(m, &fix, enumerate()).reps == 91);
}

TEST_CASE("AUROC label flip and monotone invariance under enumeration") {
  gen::Engine e(13);
  for (int t = 0; t < 50; ++t) {
    const Map m = gen::tied_map(e, 5, 4, 6);
    const auto fix = fixations_at(gen::distinct(e, 20, 3), 5);
    double hi = m[0];
    for (double v : m.values()) hi = std::max(hi, v);
    Map flipped = m, warped = m;
    for (auto& v : flipped.values()) v = hi - v;
    for (auto& v : warped.values()) v = std::exp(3.0 * v) - 7.0;
    const double a = auroc(m, &fix, enumerate()).value;
    CHECK(std::abs(a + auroc(flipped, &fix, enumerate()).value - 1.0) < 1e-12);
    CHECK(std::abs(a - auroc(warped, &fix, enumerate()).value) < 1e-12);
  }
}

TEST_CASE("sampled AUROC: determinism, range, dedup, single-subset exactness") {
  gen::Engine e(6);
  const Map m = gen::random_map(e, 20, 20);
  const auto fix = fixations_at(gen::distinct(e, 400, 30), 20);
  const auto a = auroc(m, &fix, {100, 5});
  CHECK(a.value == auroc(m, &fix, {100, 5}).value);
  CHECK(a.value >= 0.0);
  CHECK(a.value <= 1.0);
  CHECK(a.reps == 100);
  CHECK(a.seed == 5);

  FixationSet doubled = fix;
  for (const auto& p : fix.points) doubled.points.push_back(p);
  CHECK(auroc(m, &doubled, {100, 5}).value == a.value);

  // Half the pixels positive: only one negative set exists.
  RegionMask half{Mask(10, 10, 0)};
  for (int y = 0; y < 5; ++y)
    for (int x = 0; x < 10; ++x) half.mask.at(x, y) = 1;
  const Map r = gen::random_map(e, 10, 10);
  std::vector<double> pos, neg;
  for (std::size_t i = 0; i < 100; ++i) (half.mask[i] ? pos : neg).push_back(r[i]);
  CHECK(std::abs(auroc(r, &half, {7, 3}).value - oracle::mann_whitney_auc(pos, neg)) < 1e-12);

  RegionMask most{Mask(10, 10, 1)};
  most.mask.at(0, 0) = 0;
  CHECK(code_of([&] { auroc(r, &most, {10, 1}); }) == ErrorCode::TooFewNegatives);
  RegionMask none{Mask(10, 10, 0)};
  CHECK(code_of([&] { auroc(r, &none, {10, 1}); }) == ErrorCode::EmptyGroundTruth);
}

TEST_CASE("region positives are capped by seeded subsampling") {
  gen::Engine e(9);
  RegionMask big{Mask(200, 120, 0)};
  for (int y = 0; y < 120; ++y)
    for (int x = 0; x < 110; ++x) big.mask.at(x, y) = 1;  // 13200 positives
  const Map m = gen::random_map(e, 200, 120);
  const auto a = auroc(m, &big, {3, 1});
  CHECK(a.value == auroc(m, &big, {3, 1}).value);
  CHECK(std::abs(a.value - 0.5) < 0.05);
  CHECK(positive_pixels({200, 120}, &big).size() == 13200);
}

TEST_CASE("random maps against random fixations score near one half") {
  gen::Engine e(123);
  double total = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Map m = gen::random_map(e, 64, 48);
    const auto fix = fixations_at(gen::distinct(e, m.size(), 20), 64);
    total += auroc(m, &fix, {100, static_cast<std::uint64_t>(i)}).value;
  }
  CHECK(std::abs(total / 20 - 0.5) < 0.03);
}

TEST_CASE("ROC curves are monotone staircases with exact endpoints") {
  gen::Engine e(17);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> pos(gen::integer(e, 1, 12)), neg(gen::integer(e, 1, 12));
    for (auto& v : pos) v = gen::integer(e, 0, 5);
    for (auto& v : neg) v = gen::integer(e, 0, 5);
    const auto c = roc_curve(pos, neg);
    CHECK(c.front().fpr == 0.0);
    CHECK(c.front().tpr == 0.0);
    CHECK(c.back().fpr == 1.0);
    CHECK(c.back().tpr == 1.0);
    for (std::size_t i = 1; i < c.size(); ++i) {
      CHECK(c[i].fpr >= c[i - 1].fpr);
      CHECK(c[i].tpr >= c[i - 1].tpr);
    }
    CHECK(std::abs(trapezoid_auc(c) - oracle::mann_whitney_auc(pos, neg)) < 1e-12);
  }
}

TEST_CASE("metric and gt names round trip") {
  for (auto m : {MetricId::NSS, MetricId::AUROC}) CHECK(parse_metric(to_string(m)) == m);
  for (auto g : {GtKind::Fixations, GtKind::Regions}) CHECK(parse_gt_kind(to_string(g)) == g);
  CHECK(code_of([] { parse_metric("CC"); }) == ErrorCode::InvalidArgument);
}

// --- corpus scoring -----------------------------------------------------------

namespace {

corpus::Dataset two_image_dataset() {
  corpus::Dataset ds;
  gen::Engine e(3);
  for (int i = 0; i < 2; ++i) {
    corpus::Sample s;
    s.image.id = "img" + std::to_string(i);
    s.image.pixels = RgbImage(40, 32);
    for (auto& p : s.image.pixels.values()) p = {static_cast<std::uint8_t>(gen::integer(e, 0, 255)), 80, 90};
    s.region.mask = Mask(40, 32, 0);
    for (int y = 10; y < 20; ++y)
      for (int x = 12; x < 24; ++x) s.region.mask.at(x, y) = 1;
    s.fixations.points = {{14, 12}, {15, 15}, {20, 18}, {3, 3}};
    ds.samples.push_back(std::move(s));
  }
  return ds;
}

}  // namespace

TEST_CASE("score_corpus: cardinality, order, determinism") {
  const auto ds = two_image_dataset();
  const models::ModelRegistry reg({models::parse_model_spec("SR"), models::parse_model_spec("FT")});
  ScoringConfig cfg;
  cfg.seed = 17;
  cfg.reps = 20;
  const auto t = score_corpus(ds, reg, cfg);
  REQUIRE(t.rows.size() == 16);
  CHECK(t.missing_count() == 0);
  CHECK(t.rows[0].image == "img0");
  CHECK(t.rows[0].model == "SR");
  CHECK(t.rows[0].metric == MetricId::NSS);
  CHECK(t.rows[0].gt == GtKind::Fixations);
  CHECK(t.rows[1].gt == GtKind::Regions);
  CHECK(t.rows[2].metric == MetricId::AUROC);
  CHECK(t.rows[2].reps == 20);
  CHECK(t.rows[4].model == "FT");
  CHECK(t.rows[8].image == "img1");
  // Both ground truths of one cell share the negative-sampling seed.
  CHECK(t.rows[2].seed == t.rows[3].seed);
  CHECK(t.rows[2].seed == cell_seed(17, "img0", "SR", MetricId::AUROC));

  const auto again = score_corpus(ds, reg, cfg);
  std::ostringstream a, b;
  write_csv(a, t);
  write_csv(b, again);
  CHECK(a.str() == b.str());
}

TEST_CASE("score_corpus isolates a constant-map cell") {
  auto ds = two_image_dataset();
  const auto dir = gen::scratch_dir("constcell");
  write_mask_png(dir / "img0.png", Mask(40, 32, 77));
  Mask varied(40, 32, 0);
  for (int y = 0; y < 32; ++y)
    for (int x = 0; x < 40; ++x) varied.at(x, y) = static_cast<std::uint8_t>(x * 6);
  write_mask_png(dir / "img1.png", varied);
  const models::ModelRegistry reg({models::parse_model_spec("SR"), models::parse_model_spec("ext:C=" + dir.string())});
  const auto t = score_corpus(ds, reg, {});
  REQUIRE(t.rows.size() == 16);
  CHECK(t.missing_count() == 4);
  for (const auto& r : t.rows) {
    const bool broken = r.image == "img0" && r.model == "C";
    CHECK(r.ok() == !broken);
    if (broken) {
      CHECK(r.error == "DegenerateMap");
      CHECK(std::isnan(r.value));
    }
  }
  CHECK(t.missing_by_reason().at("DegenerateMap") == 4);
}

TEST_CASE("single-row failures stay single") {
  auto ds = two_image_dataset();
  // Regions cover almost all of img1: its region AUROC rows lack negatives.
  ds.samples[1].region.mask = Mask(40, 32, 1);
  ds.samples[1].region.mask.at(0, 0) = 0;
  ScoringConfig cfg;
  cfg.reps = 5;
  const auto t = score_corpus(ds, models::ModelRegistry({models::parse_model_spec("PFT")}), cfg);
  REQUIRE(t.rows.size() == 8);
  CHECK(t.missing_count() == 1);
  const auto it = std::find_if(t.rows.begin(), t.rows.end(), [](const ScoreRow& r) { return !r.ok(); });
  CHECK(it->image == "img1");
  CHECK(it->metric == MetricId::AUROC);
  CHECK(it->gt == GtKind::Regions);
  CHECK(it->error == "TooFewNegatives");
}

TEST_CASE("score CSV round trip is exact") {
  gen::Engine e(12);
  ScoreTable t;
  for (int i = 0; i < 50; ++i) {
    ScoreRow r{"im,\"" + std::to_string(i), "M" + std::to_string(i % 3), i % 2 ? GtKind::Regions : GtKind::Fixations,
               i % 3 ? MetricId::AUROC : MetricId::NSS, gen::real(e, -1e3, 1e3), i, e(), ""};
    if (i % 7 == 0) {
      r.value = std::nan("");
      r.error = "DegenerateMap";
    }
    t.rows.push_back(r);
  }
  std::ostringstream out;
  write_csv(out, t);
  CHECK(out.str().rfind("image,model,gt,metric,value,reps,seed,error\n", 0) == 0);
  std::istringstream in(out.str());
  const auto back = read_score_csv(in);
  REQUIRE(back.rows.size() == t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& a = t.rows[i];
    const auto& b = back.rows[i];
    CHECK(a.image == b.image);
    CHECK(a.model == b.model);
    CHECK(a.gt == b.gt);
    CHECK(a.metric == b.metric);
    CHECK(a.reps == b.reps);
    CHECK(a.seed == b.seed);
    CHECK(a.error == b.error);
    if (a.ok()) CHECK(a.value == b.value);
    else CHECK(std::isnan(b.value));
  }
}
