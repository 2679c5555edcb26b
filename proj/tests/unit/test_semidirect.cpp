#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "qgspec/core/errors.hpp"
#include "qgspec/semidirect/bicrossed.hpp"
#include "qgspec/semidirect/half_line.hpp"

using namespace qgspec;
using namespace qgspec::semidirect;

namespace {

// Row j of a 0/1 matrix as the list of its columns.
std::vector<long> columns(const SparseMatrix& m, long row) {
  std::vector<long> out;
  for (SparseMatrix::InnerIterator it(m, row); it; ++it) out.push_back(it.col());
  return out;
}

}  // namespace

TEST(HalfLineGrid, Points) {
  const HalfLineGrid grid(0.5, 10);
  EXPECT_EQ(grid.size(), 20u);
  EXPECT_DOUBLE_EQ(grid.point(0), 0.25);
  EXPECT_DOUBLE_EQ(grid.point(19), 9.75);
  EXPECT_DOUBLE_EQ(grid.cell_mass(), 0.5 / (4 * std::numbers::pi));
  EXPECT_EQ(grid.domain()->size(), 20u);
  EXPECT_THROW(HalfLineGrid(0, 1), input_error);
  EXPECT_THROW(HalfLineGrid(1, 0.5), input_error);
  EXPECT_EQ(HalfLineGrid(0.1, 1.0).size(), 10u);
}

TEST(SigmaR, UnitGridExample) {
  const HalfLineGrid grid(1, 5);
  const auto c = sigma_r_components(grid, 1);
  EXPECT_EQ(c.k, 1);
  EXPECT_EQ(columns(c.shift, 2), std::vector<long>{1});
  EXPECT_EQ(columns(c.plus, 2), std::vector<long>{3});
  EXPECT_TRUE(columns(c.minus, 2).empty());
  EXPECT_TRUE(columns(c.shift, 0).empty());
  EXPECT_EQ(columns(c.plus, 0), std::vector<long>{1});
  EXPECT_EQ(columns(c.minus, 0), std::vector<long>{0});

  const auto op = build_L_sigma_r(grid, 1);
  EXPECT_EQ(op.entry(2, 1), 1.0);
  EXPECT_EQ(op.entry(2, 3), 1.0);
  EXPECT_EQ(op.entry(0, 0), 1.0);
  EXPECT_EQ(op.entry(0, 1), 1.0);
  EXPECT_EQ(op.entry(2, 2), 0.0);
  EXPECT_TRUE(op.symmetric());
}

TEST(SigmaR, SnapDelta) {
  const HalfLineGrid grid(0.1, 10);
  const auto c = sigma_r_components(grid, 0.34);
  EXPECT_EQ(c.k, 3);
  EXPECT_NEAR(c.snapped_r, 0.3, 1e-15);
  EXPECT_NEAR(c.snap_delta, -0.04, 1e-12);
  const auto op = build_L_sigma_r(grid, 0.34);
  EXPECT_NEAR(op.metadata().at("snap_delta"), -0.04, 1e-12);
}

TEST(SigmaR, Errors) {
  const HalfLineGrid grid(0.1, 10);
  EXPECT_THROW(sigma_r_components(grid, 0), input_error);
  EXPECT_THROW(sigma_r_components(grid, -1), input_error);
  EXPECT_THROW(sigma_r_components(grid, 0.04), input_error);
  EXPECT_THROW(sigma_r_components(grid, 10), input_error);
  EXPECT_THROW(sigma_r_components(grid, std::nan("")), input_error);
}

TEST(SigmaR, ComponentsReconstructOperator) {
  const HalfLineGrid grid(0.25, 8);
  for (double r : {0.25, 1.0, 3.3, 7.5}) {
    const auto c = sigma_r_components(grid, r);
    const Eigen::MatrixXd sum = Eigen::MatrixXd(c.shift) + Eigen::MatrixXd(c.plus) + Eigen::MatrixXd(c.minus);
    EXPECT_EQ(build_L_sigma_r(grid, r).to_dense(), sum);
    // each piece is a partial permutation
    for (const SparseMatrix* m : {&c.shift, &c.plus, &c.minus})
      for (long j = 0; j < static_cast<long>(grid.size()); ++j) EXPECT_LE(columns(*m, j).size(), 1u);
  }
}

TEST(SigmaR, NormAtMostTwo) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> unif(0.05, 9.9);
  const HalfLineGrid grid(0.05, 10);
  for (int i = 0; i < 10; ++i) {
    const double r = unif(rng);
    const auto op = build_L_sigma_r(grid, r);
    const double norm = oracle::dense_norm(op);
    EXPECT_LE(norm, 2.0 + 1e-9) << r;
    EXPECT_NEAR(spectral_radius(op).radius_estimate, norm, 1e-8);
  }
}

TEST(Interval, UnitIntervalTarget) {
  const HalfLineGrid grid(1.0 / 64, 40);
  const auto iv = build_L_nu_interval(grid, 0, 1);
  EXPECT_EQ(iv.nodes, 64u);
  EXPECT_NEAR(iv.target, 1 / (2 * std::numbers::pi), 1e-14);
  EXPECT_NEAR(iv.a_snapped, 0.5 / 64, 1e-15);
  EXPECT_NEAR(iv.b_snapped, 1 + 0.5 / 64, 1e-15);
  EXPECT_TRUE(iv.op.symmetric());
  EXPECT_EQ(iv.op.metadata().at("quadrature_nodes"), 64.0);
}

TEST(Interval, SumOfSigmaOperators) {
  const HalfLineGrid grid(0.5, 6);
  const auto iv = build_L_nu_interval(grid, 0.8, 2.2);
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(12, 12);
  for (double r : {1.0, 1.5, 2.0}) sum += grid.cell_mass() * build_L_sigma_r(grid, r).to_dense();
  EXPECT_EQ(iv.nodes, 3u);
  EXPECT_LT((iv.op.to_dense() - sum).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Interval, NoNodes) {
  const HalfLineGrid grid(0.1, 5);
  const auto iv = build_L_nu_interval(grid, 0, 0.025);
  EXPECT_EQ(iv.nodes, 0u);
  EXPECT_EQ(iv.op.nnz(), 0u);
  EXPECT_EQ(iv.target, 0.0);
  EXPECT_THROW(build_L_nu_interval(grid, 1, 1), input_error);
  EXPECT_THROW(build_L_nu_interval(grid, 2, 1), input_error);
  EXPECT_THROW(build_L_nu_interval(grid, 0, 6), input_error);
}

TEST(Interval, NormAtMostTwiceMass) {
  const HalfLineGrid grid(0.05, 12);
  for (auto [a, b] : {std::pair{0.0, 1.0}, {0.5, 0.7}, {2.0, 5.0}}) {
    const auto iv = build_L_nu_interval(grid, a, b);
    EXPECT_LE(oracle::dense_norm(iv.op), iv.target + 1e-9);
    EXPECT_LE(spectral_radius(iv.op).radius_estimate, iv.target + 1e-9);
  }
}

TEST(Witness, UnitNormAndSupport) {
  const HalfLineGrid grid(0.01, 10);
  const Vector f = window_witness(grid, 1);
  EXPECT_EQ((f.array() != 0).count(), 100);
  EXPECT_NEAR(std::sqrt(f.squaredNorm() * grid.cell_mass()), 1.0, 1e-12);
  EXPECT_THROW(window_witness(grid, 0), input_error);
  EXPECT_THROW(window_witness(grid, 6), input_error);
  EXPECT_THROW(window_witness(HalfLineGrid(1, 10), 0.1), input_error);
}

TEST(Witness, ResidualsDecrease) {
  const HalfLineGrid grid(0.02, 40);
  const auto v = interval_test(grid, 0, 1, {2, 4, 8}, 0.05);
  const double r2 = *v.detail("residual:m=2");
  const double r4 = *v.detail("residual:m=4");
  const double r8 = *v.detail("residual:m=8");
  EXPECT_GT(r2, r4);
  EXPECT_GT(r4, r8);
  EXPECT_EQ(v.rule, "residual");
  EXPECT_NEAR(v.target, 1 / (2 * std::numbers::pi), 1e-3);
  EXPECT_TRUE(v.certified);
  EXPECT_GE(oracle::dense_distance(build_L_nu_interval(grid, 0, 1).op, v.target), 0.0);
  EXPECT_LE(oracle::dense_distance(build_L_nu_interval(grid, 0, 1).op, v.target), v.best_residual() + 1e-9);
}

TEST(SymLattice, ClassesAndIndex) {
  for (int bound : {1, 2, 3, 7}) {
    const SymLatticePair pairs(bound);
    const std::size_t m = 2 * bound + 1;
    EXPECT_EQ(pairs.size(), m * (m - 1) / 2);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto [a, b] = pairs.classes()[i];
      EXPECT_LT(a, b);
      EXPECT_EQ(pairs.index_of({a, b}), i);
      EXPECT_EQ(pairs.index_of({b, a}), i);
    }
    EXPECT_FALSE(pairs.index_of({0, 0}));
    EXPECT_FALSE(pairs.index_of({bound + 1, 0}));
  }
  EXPECT_EQ(SymLatticePair::canonical({3, -1}), (Pair{-1, 3}));
  EXPECT_EQ(SymLatticePair::conjugate({1, 0}), (Pair{-1, 0}));
  EXPECT_THROW(SymLatticePair::canonical({2, 2}), input_error);
  EXPECT_THROW(SymLatticePair(0), input_error);
}

TEST(Bicrossed, RowExample) {
  const SymLatticePair pairs(3);
  const auto op = build_bicrossed_L(pairs, {1, 0});
  const auto row = *pairs.index_of({0, 2});
  EXPECT_EQ(op.entry(row, *pairs.index_of({-1, 2})), 1.0);
  EXPECT_EQ(op.entry(row, *pairs.index_of({0, 1})), 1.0);
  double total = 0;
  for (std::size_t c = 0; c < pairs.size(); ++c) total += op.entry(row, c);
  EXPECT_EQ(total, 2.0);
}

TEST(Bicrossed, RowsAndBookkeeping) {
  const SymLatticePair pairs(4);
  for (Pair shift : {Pair{1, 0}, Pair{2, -1}, Pair{0, 3}, Pair{-2, 2}}) {
    const auto op = build_bicrossed_L(pairs, shift);
    const Eigen::MatrixXd d = op.to_dense();
    EXPECT_LE(d.maxCoeff(), 1.0);  // the two targets of a row never coincide
    EXPECT_LE(d.rowwise().sum().maxCoeff(), 2.0);
    const double kept = d.sum();
    EXPECT_EQ(kept + op.metadata().at("diagonal_drops") + op.metadata().at("out_of_bounds"),
              2.0 * static_cast<double>(pairs.size()));
  }
  EXPECT_THROW(build_bicrossed_L(pairs, {1, 1}), input_error);
}

TEST(Bicrossed, TransposeIsConjugate) {
  const SymLatticePair pairs(5);
  for (Pair shift : {Pair{1, 0}, Pair{2, -1}, Pair{0, 3}, Pair{-3, 1}}) {
    const auto op = build_bicrossed_L(pairs, shift);
    EXPECT_EQ(op.transpose().to_dense(), build_bicrossed_L(pairs, SymLatticePair::conjugate(shift)).to_dense());
    EXPECT_EQ(op.to_dense(), build_bicrossed_L(pairs, {shift.second, shift.first}).to_dense());
  }
}

TEST(Bicrossed, IndependentOfP) {
  const SymLatticePair pairs(4);
  const std::vector<Pair> omega{{1, 0}, {-1, 0}, {2, 1}, {-2, -1}};
  const auto base = build_bicrossed_L_nu(pairs, omega, 1.0).to_dense();
  for (double p : {-3.0, 0.0, 2.0, 7.5}) EXPECT_EQ(build_bicrossed_L_nu(pairs, omega, p).to_dense(), base);
}

// Brute force over ordered pairs: f lifted to (g, g') with f(g, g') = f(g', g).
TEST(Bicrossed, MatchesOrderedPairLift) {
  const int bound = 4;
  const SymLatticePair pairs(bound);
  const std::vector<Pair> omega{{1, 0}, {-1, 0}};
  const auto op = build_bicrossed_L_nu(pairs, omega);
  std::map<std::pair<std::size_t, std::size_t>, double> expected;
  for (const auto& [g, gp] : pairs.classes())
    for (Pair k : {Pair{0, 1}, Pair{-1, 0}})
      for (auto [r, rp] : {k, Pair{k.second, k.first}}) {
        const Pair t{g - r, gp - rp};
        if (t.first == t.second || std::abs(t.first) > bound || std::abs(t.second) > bound) continue;
        expected[{*pairs.index_of({g, gp}), *pairs.index_of(t)}] += 1;
      }
  EXPECT_EQ(op.nnz(), expected.size());
  for (const auto& [rc, v] : expected) EXPECT_EQ(op.entry(rc.first, rc.second), v);
  EXPECT_TRUE(op.symmetric());
}

TEST(Bicrossed, OmegaErrors) {
  const SymLatticePair pairs(3);
  EXPECT_THROW(build_bicrossed_L_nu(pairs, {}), input_error);
  EXPECT_THROW(build_bicrossed_L_nu(pairs, {{1, 0}}), input_error);
  EXPECT_THROW(build_bicrossed_L_nu(pairs, {{1, 1}}), input_error);
  EXPECT_NO_THROW(build_bicrossed_L_nu(pairs, {{1, 0}, {0, -1}}));
  EXPECT_THROW(bicrossed_amenability_test({10, 5}, {{1, 0}, {-1, 0}}, 1, 0.05), input_error);
  EXPECT_THROW(bicrossed_amenability_test({}, {{1, 0}, {-1, 0}}, 1, 0.05), input_error);
}

TEST(Bicrossed, VerdictStructure) {
  const auto v = bicrossed_amenability_test({6, 12}, {{1, 0}, {-1, 0}}, 1, 0.05);
  EXPECT_EQ(v.primary.target, 4.0);
  EXPECT_EQ(v.secondary.target, 2.0);
  EXPECT_NEAR(*v.secondary.detail("modulation_theta"), std::numbers::pi / 3, 1e-9);
  EXPECT_LE(v.primary.best_residual(), *v.primary.detail("best_residual:B=6"));
  EXPECT_LE(v.primary.best_residual(), *v.primary.detail("best_residual:B=12"));
  EXPECT_EQ(v.primary.spectral.truncation_trace.size(), 2u);
  EXPECT_LE(v.primary.spectral.radius_estimate, 4.0 + 1e-9);
  // each certificate speaks about the truncation it was computed on
  double d4 = INFINITY, d2 = INFINITY;
  for (int b : {6, 12}) {
    const auto op = build_bicrossed_L_nu(SymLatticePair(b), {{1, 0}, {-1, 0}});
    d4 = std::min(d4, oracle::dense_distance(op, 4.0));
    d2 = std::min(d2, oracle::dense_distance(op, 2.0));
  }
  EXPECT_LE(d4, v.primary.best_residual() + 1e-9);
  EXPECT_LE(d2, v.secondary.best_residual() + 1e-9);
}
