#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "qgspec/core/errors.hpp"
#include "qgspec/fusion/descriptor.hpp"
#include "qgspec/fusion/operators.hpp"

using namespace qgspec;
using namespace qgspec::fusion;

namespace {

const std::string kData = QGSPEC_DATA_DIR;
const std::string kTestData = QGSPEC_TEST_DATA_DIR;

FusionRing su2(int level) { return load_ring(RuleDescriptor{"free-su2", 2.0, level}); }
FusionRing o3(int level) { return load_ring(RuleDescriptor{"free-su2", 3.0, level}); }
FusionRing from_file(const std::string& path) { return load_ring(parse_descriptor_file(path)); }

std::string failing_axiom(const std::string& path) {
  try {
    from_file(path);
  } catch (const validation_error& e) {
    return e.axiom();
  }
  return "";
}

}  // namespace

TEST(FusionRing, Su2LevelTen) {
  const auto ring = su2(10);
  EXPECT_EQ(ring.size(), 11u);
  for (Label n = 0; n <= 10; ++n) EXPECT_EQ(ring.dim(n), static_cast<Dimension>(n + 1));
  EXPECT_EQ(ring.name(3), "a3");
  EXPECT_EQ(ring.require("a7"), 7u);
  EXPECT_FALSE(ring.find("a11"));
  EXPECT_FALSE(ring.find("b1"));
  EXPECT_THROW(ring.require("a11"), input_error);
  EXPECT_TRUE(ring.integral_dims());
}

TEST(FusionRing, O3PlusDimensions) {
  const auto ring = o3(6);
  const std::vector<Dimension> expected{1, 3, 8, 21, 55, 144, 377};
  for (Label n = 0; n < expected.size(); ++n) EXPECT_EQ(ring.dim(n), expected[n]);
}

TEST(FusionRing, O3PlusHighLevelStaysFinite) {
  const auto ring = o3(1999);
  EXPECT_TRUE(std::isfinite(ring.dim(1999)));
  EXPECT_GT(ring.dim(1999), 1e800L);
  EXPECT_TRUE(dim_bookkeeping_check(ring, 1, {1999}));
}

TEST(FusionRing, RuleDecomposition) {
  const auto ring = su2(5);
  const auto d = ring.decompose(2, 3);
  ASSERT_EQ(d.channels.size(), 3u);
  EXPECT_EQ(d.channels[0].label, 1u);
  EXPECT_EQ(d.channels[1].label, 3u);
  EXPECT_EQ(d.channels[2].label, 5u);
  EXPECT_EQ(d.clipped, 0u);
  const auto c = ring.decompose(4, 3);  // 1,3,5,7 with 7 above the level
  EXPECT_EQ(c.channels.size(), 3u);
  EXPECT_EQ(c.clipped, 1u);
  EXPECT_EQ(ring.decompose_unclipped(4, 3).size(), 4u);
}

TEST(FusionRing, TrivialRing) {
  const auto ring = from_file(kTestData + "/trivial.json");
  EXPECT_EQ(ring.size(), 1u);
  for (const auto& r : check_axioms(ring)) EXPECT_TRUE(r.passed) << r.axiom;
}

TEST(FusionRing, ShippedRingsValidate) {
  for (const char* f : {"su2_level30.json", "o3plus_level30.json", "rep_s3.json", "fibonacci.json"}) {
    const auto ring = FusionRing::unchecked(parse_descriptor_file(kData + "/" + f));
    for (const auto& r : check_axioms(ring)) EXPECT_TRUE(r.passed) << f << ": " << r.axiom << " " << r.detail;
  }
}

TEST(FusionRing, RealDimensionsUseRelativeTolerance) {
  const auto ring = from_file(kData + "/fibonacci.json");
  EXPECT_FALSE(ring.integral_dims());
  EXPECT_TRUE(dim_bookkeeping_check(ring, 1, {1}));
  EXPECT_TRUE(dims_agree(1e10L, 1e10L * (1 + 1e-11L), false));
  EXPECT_FALSE(dims_agree(1e10L, 1e10L * (1 + 1e-8L), false));
  EXPECT_FALSE(dims_agree(4, 5, true));
}

TEST(FusionRing, DimensionHomomorphismFailure) {
  EXPECT_EQ(failing_axiom(kTestData + "/dim_mismatch.json"), "dimension homomorphism");
}

TEST(FusionRing, BrokenConjugation) {
  EXPECT_EQ(failing_axiom(kTestData + "/broken_conj.json"), "conjugation involution");
}

TEST(FusionRing, DimensionPositivity) {
  EXPECT_THROW(load_ring(RuleDescriptor{"free-su2", 0.5, 4}), validation_error);
  try {
    load_ring(RuleDescriptor{"free-su2", 0.5, 4});
  } catch (const validation_error& e) {
    EXPECT_EQ(e.axiom(), "dimension positivity");
  }
}

TEST(FusionRing, ParseErrors) {
  EXPECT_THROW(parse_descriptor_file(kTestData + "/unknown_field.json"), parse_error);
  EXPECT_THROW(parse_descriptor_file(kTestData + "/truncated.json"), parse_error);
  EXPECT_THROW(parse_descriptor_file(kTestData + "/missing.json"), parse_error);
  using nlohmann::json;
  EXPECT_THROW(parse_descriptor(json{{"kind", "graph"}}), parse_error);
  EXPECT_THROW(parse_descriptor(json{{"kind", "rule"}, {"rule", "free-su2"}, {"N", 2}, {"level", 0}}), parse_error);
  EXPECT_THROW(parse_descriptor(json{{"kind", "rule"}, {"rule", "su3"}, {"N", 2}, {"level", 3}}), parse_error);
  EXPECT_THROW(parse_descriptor(json{{"kind", "table"}, {"labels", {"1"}}, {"dims", {1}}, {"conj", {"1"}},
                                     {"fusion", {{"1", "1", 1}}}}),
               parse_error);
  EXPECT_THROW(FusionRing::unchecked(parse_descriptor(json{{"kind", "table"}, {"labels", {"1"}}, {"dims", {1}},
                                                           {"conj", {"1"}}, {"fusion", {{"1", "1", "x", 1}}}})),
               parse_error);
}

TEST(FusionRing, DescriptorRoundTrip) {
  for (const char* f : {"rep_s3.json", "su2_level30.json", "fibonacci.json"}) {
    const auto desc = parse_descriptor_file(kData + "/" + f);
    EXPECT_EQ(to_json(parse_descriptor(to_json(desc))), to_json(desc)) << f;
  }
}

TEST(BuildLKappa, Su2FundamentalIsTridiagonal) {
  const auto op = build_L_kappa(su2(10), 1, 5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      EXPECT_EQ(op.entry(i, j), (i + 1 == j || j + 1 == i) ? 1.0 : 0.0);
  EXPECT_TRUE(op.symmetric());
}

TEST(BuildLKappa, AppliedToBasisVector) {
  const Vector out = build_L_kappa(su2(10), 1, 5).apply(Vector::Unit(5, 2));
  Vector expected = Vector::Zero(5);
  expected[1] = expected[3] = 1.0;
  EXPECT_EQ(out, expected);
}

TEST(BuildLKappa, UnitIsIdentity) {
  const auto op = build_L_kappa(su2(10), 0, 8);
  EXPECT_EQ(op.to_dense(), Eigen::MatrixXd::Identity(8, 8));
  const auto s3 = from_file(kData + "/rep_s3.json");
  EXPECT_EQ(build_L_kappa(s3, 0, 3).to_dense(), Eigen::MatrixXd::Identity(3, 3));
}

TEST(BuildLKappa, DimensionIndependence) {
  const auto a = build_L_kappa(su2(10), 1, 5);
  const auto b = build_L_kappa(o3(10), 1, 5);
  EXPECT_EQ(a.to_dense(), b.to_dense());
  EXPECT_NE(a.domain().dim_weight(), b.domain().dim_weight());
  EXPECT_EQ(b.domain().dim_weight()[2], 8.0);
}

TEST(BuildLKappa, Errors) {
  const auto ring = su2(10);
  EXPECT_THROW(build_L_kappa(ring, 11, 5), input_error);
  EXPECT_THROW(build_L_kappa(ring, 1, 12), input_error);
  EXPECT_THROW(build_L_kappa(ring, 1, 0), input_error);
}

TEST(BuildLKappa, ClippedChannelsRecorded) {
  const auto ring = su2(10);
  EXPECT_EQ(build_L_kappa(ring, 1, 11).metadata().at("clipped_channels"), 1.0);  // a10 (x) a1 -> a11
  EXPECT_EQ(build_L_kappa(ring, 1, 5).metadata().at("clipped_channels"), 1.0);   // a4 (x) a1 -> a5
  EXPECT_EQ(build_L_kappa(ring, 0, 5).metadata().at("clipped_channels"), 0.0);
}

TEST(BuildLKappa, EntriesAreMultiplicities) {
  // Brute-force re-derivation from decompose() on every label pair.
  for (const auto& ring : {su2(40), o3(40), from_file(kData + "/rep_s3.json"), from_file(kTestData + "/z3.json")}) {
    const std::size_t trunc = ring.size();
    for (Label k = 0; k < ring.size(); k += (ring.size() > 10 ? 7 : 1)) {
      const auto op = build_L_kappa(ring, k, trunc);
      Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(trunc, trunc);
      for (Label a = 0; a < trunc; ++a)
        for (const auto& c : ring.decompose(k, a).channels) expected(c.label, a) += c.multiplicity;
      EXPECT_EQ(op.to_dense(), expected);
      for (Label b = 0; b < trunc; ++b)
        for (Label a = 0; a < trunc; ++a) EXPECT_EQ(op.entry(b, a), ring.multiplicity(b, k, a));
    }
  }
}

TEST(BuildLKappa, AdjointRule) {
  const auto z3 = from_file(kTestData + "/z3.json");
  for (Label k = 0; k < 3; ++k)
    EXPECT_EQ(build_L_kappa(z3, k, 3).transpose().to_dense(), build_L_kappa(z3, z3.conj(k), 3).to_dense());
  EXPECT_FALSE(build_L_kappa(z3, 1, 3).symmetric());
  const auto ring = su2(30);
  for (Label k = 0; k < 31; ++k)
    EXPECT_EQ(build_L_kappa(ring, k, 20).transpose().to_dense(), build_L_kappa(ring, k, 20).to_dense());
}

TEST(BuildLKappa, NormBoundedByDimension) {
  for (const auto& ring : {su2(30), from_file(kData + "/rep_s3.json"), from_file(kData + "/fibonacci.json")})
    for (Label k = 0; k < ring.size(); ++k) {
      const auto op = build_L_kappa(ring, k, ring.size());
      const double d = static_cast<double>(ring.dim(k));
      EXPECT_LE(spectral_radius(op).radius_lower_bound, d + 1e-9);
      EXPECT_LE(oracle::dense_radius(op), d + 1e-9);
    }
  const auto z3 = from_file(kTestData + "/z3.json");
  for (Label k = 0; k < 3; ++k) EXPECT_LE(operator_norm(build_L_kappa(z3, k, 3)).radius_lower_bound, 1 + 1e-9);
}

TEST(BuildLNu, UnitIsIdentity) {
  EXPECT_EQ(build_L_nu(su2(10), {0}, 6).to_dense(), Eigen::MatrixXd::Identity(6, 6));
}

TEST(BuildLNu, SumOfFusionMatrices) {
  const auto ring = su2(60);
  const auto one = build_L_nu(ring, {1}, 50);
  const auto both = build_L_nu(ring, {1, 2}, 50);
  EXPECT_EQ(both.to_dense(), build_L_kappa(ring, 1, 50).to_dense() + build_L_kappa(ring, 2, 50).to_dense());
  const Eigen::MatrixXd d = both.to_dense();
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 50; ++j)
      if (std::abs(i - j) > 2) EXPECT_EQ(d(i, j), 0.0);
  EXPECT_EQ(d(10, 12), 1.0);
  EXPECT_EQ(d(10, 10), 1.0);  // a2 (x) a10 contains a10
  EXPECT_EQ(one.to_dense()(10, 10), 0.0);
  EXPECT_EQ(one.nnz(), 98u);
}

TEST(BuildLNu, SymmetryFollowsOmega) {
  const auto z3 = from_file(kTestData + "/z3.json");
  EXPECT_FALSE(build_L_nu(z3, {1}, 3).symmetric());
  EXPECT_TRUE(build_L_nu(z3, {1, 2}, 3).symmetric());
  EXPECT_THROW(build_L_nu(z3, {}, 3), input_error);
  EXPECT_THROW(build_L_nu(z3, {3}, 3), input_error);
}

TEST(Bookkeeping, Examples) {
  EXPECT_TRUE(dim_bookkeeping_check(su2(10), 1, {1}));
  EXPECT_TRUE(dim_bookkeeping_check(o3(10), 1, {1}));
  EXPECT_TRUE(dim_bookkeeping_check(from_file(kData + "/rep_s3.json"), 0, {1, 2}));
}

TEST(Bookkeeping, AllPairsOnClosedSets) {
  std::mt19937_64 rng(17);
  for (const auto& ring : {su2(30), o3(30), from_file(kData + "/rep_s3.json"), from_file(kTestData + "/z3.json")}) {
    std::uniform_int_distribution<Label> pick(0, ring.size() - 1);
    for (Label k = 0; k < ring.size(); ++k)
      for (int trial = 0; trial < 10; ++trial) {
        std::vector<Label> omega;
        for (int i = 0; i < 1 + trial % 4; ++i) omega.push_back(pick(rng));
        EXPECT_TRUE(dim_bookkeeping_check(ring, k, omega));
      }
  }
}

TEST(Bookkeeping, DetectsBrokenTable) {
  const auto bad = FusionRing::unchecked(parse_descriptor_file(kTestData + "/dim_mismatch.json"));
  EXPECT_FALSE(dim_bookkeeping_check(bad, 2, {2}));
  EXPECT_TRUE(dim_bookkeeping_check(bad, 0, {2}));
}

TEST(Coamenability, UnitCertifiesImmediately) {
  const auto v = coamenability_test(su2(20), {0}, 15);
  EXPECT_TRUE(v.certified);
  EXPECT_EQ(v.target, 1.0);
  EXPECT_EQ(v.best_residual(), 0.0);
}

TEST(Coamenability, Su2ModerateTruncation) {
  const auto v = coamenability_test(su2(199), {1}, 200);
  EXPECT_TRUE(v.certified);
  EXPECT_EQ(v.target, 2.0);
  EXPECT_LE(v.best_residual(), 1e-2);
  const double top = 2 * std::cos(std::numbers::pi / 201);
  EXPECT_NEAR(v.spectral.radius_estimate, top, 1e-8);
  EXPECT_NEAR(oracle::dense_radius(build_L_nu(su2(199), {1}, 200)), top, 1e-12);
}

TEST(Coamenability, O3PlusModerateTruncation) {
  const auto v = coamenability_test(o3(199), {1}, 200);
  EXPECT_FALSE(v.certified);
  EXPECT_EQ(v.target, 3.0);
  ASSERT_TRUE(v.certificate.gap_hint);
  EXPECT_GE(*v.certificate.gap_hint, 0.9);
}

TEST(Coamenability, Preconditions) {
  const auto z3 = from_file(kTestData + "/z3.json");
  EXPECT_THROW(coamenability_test(su2(30), {1}, 9), input_error);
  EXPECT_THROW(coamenability_test(su2(30), {}, 20), input_error);
  EXPECT_THROW(coamenability_test(z3, {1}, 3), input_error);
}

TEST(Coamenability, WindowWitnesses) {
  const auto w = level_window_witnesses(80);
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[0].id, "window:10");
  for (const auto& x : w) EXPECT_NEAR(x.vector.norm(), 1.0, 1e-12);
}

TEST(Coamenability, RadiusMonotoneInTruncation) {
  const auto ring = su2(400);
  double prev = 0;
  for (std::size_t n : {10, 20, 50, 120, 300}) {
    const double r = spectral_radius(build_L_nu(ring, {1, 2}, n)).radius_estimate;
    EXPECT_GE(r, prev - 1e-10);
    prev = r;
  }
}
