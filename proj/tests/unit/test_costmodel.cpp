#include <gtest/gtest.h>

#include <cstdio>
#include <sstream>

#include "kernhe/costmodel.hpp"
#include "kernhe/errors.hpp"
#include "kernhe/kernelengine.hpp"
#include "kernhe/mlarith.hpp"
#include "kernhe/mlbool.hpp"

using namespace kernhe;

TEST(Profiles, Builtins) {
  const auto all = builtin_profiles();
  ASSERT_EQ(all.size(), 4u);
  const CostProfile plain = find_profile("plain");
  EXPECT_DOUBLE_EQ(plain.t_add, 3.39e-9);
  EXPECT_DOUBLE_EQ(plain.t_mult, 3.56e-9);
  const CostProfile tfhe = find_profile("TFHE");
  EXPECT_DOUBLE_EQ(tfhe.t_add, 1.06);
  EXPECT_DOUBLE_EQ(tfhe.t_mult, 22.95);
  ASSERT_TRUE(tfhe.t_gate.has_value());
  EXPECT_DOUBLE_EQ(*tfhe.t_gate, 22.95 / 1770.0);
  EXPECT_DOUBLE_EQ(find_profile("ckks").t_mult, 920.75e-3);
  EXPECT_EQ(find_profile("B/FV").scheme, find_profile("bfv").scheme);
  EXPECT_THROW(find_profile("paillier"), ValidationError);
  EXPECT_THROW(plain.gate_seconds(10), ValidationError);
}

TEST(Profiles, RatiosFromStoredTimes) {
  EXPECT_NEAR(find_profile("plain").ratio(), 3.56 / 3.39, 1e-12);
  EXPECT_NEAR(find_profile("tfhe").ratio(), 22.95 / 1.06, 1e-12);
  EXPECT_NEAR(find_profile("ckks").ratio(), 920.75 / 24.85, 1e-12);
  EXPECT_NEAR(find_profile("bfv").ratio(), 284.62 / 1.81, 1e-12);
}

TEST(Profiles, GateTimes) {
  EXPECT_NEAR(tfhe_gate_time_from_mult(), 0.012966, 1e-6);
  EXPECT_NEAR(tfhe_gate_time_from_add(), 0.013766, 1e-6);
}

TEST(Profiles, TextRoundTrip) {
  std::ostringstream out;
  write_profiles(out, builtin_profiles());
  std::istringstream in(out.str());
  const auto back = read_profiles(in);
  ASSERT_EQ(back.size(), 4u);
  for (size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(back[i].scheme, builtin_profiles()[i].scheme);
    EXPECT_DOUBLE_EQ(back[i].t_add, builtin_profiles()[i].t_add);
    EXPECT_DOUBLE_EQ(back[i].t_mult, builtin_profiles()[i].t_mult);
    EXPECT_EQ(back[i].t_gate, builtin_profiles()[i].t_gate);
    EXPECT_EQ(back[i].annotation, builtin_profiles()[i].annotation);
  }
  const std::string path = testing::TempDir() + "profiles.txt";
  store_profiles(path, back);
  EXPECT_EQ(load_profiles(path).size(), 4u);
  std::remove(path.c_str());
}

TEST(Profiles, ParseErrors) {
  const auto bad = [](const std::string& text) {
    std::istringstream in(text);
    return read_profiles(in);
  };
  EXPECT_NO_THROW(bad("# c\nscheme = x\nt_add = 1\nt_mult = 2\n"));
  EXPECT_THROW(bad(""), ParseError);
  EXPECT_THROW(bad("scheme = x\nt_add = 1\n"), ValidationError);
  EXPECT_THROW(bad("scheme = x\nt_add = one\nt_mult = 2\n"), ParseError);
  EXPECT_THROW(bad("scheme = x\nt_add = 1\nt_mult = 2\ncolour = red\n"), ParseError);
  EXPECT_THROW(bad("scheme = x\nt_add = -1\nt_mult = 2\n"), ValidationError);
  EXPECT_THROW(load_profiles("/nonexistent/p.txt"), Error);
}

TEST(Eff, Basics) {
  EXPECT_DOUBLE_EQ(eff(10, 10), 1.0);
  EXPECT_NEAR(eff(38.18 * 3600, 509.91), 269.56, 0.01);
  EXPECT_THROW(eff(0, 1), ValidationError);
  EXPECT_THROW(eff(1, -1), ValidationError);
}

TEST(Estimate, ArithMatchesClosedForms) {
  const CostProfile ckks = find_profile("ckks");
  EstimateParams p;
  p.n = 10;
  p.d = 12;
  const auto g = estimate("svm", Variant::general, p, ckks);
  const auto k = estimate("svm", Variant::kernel, p, ckks);
  EXPECT_EQ(g.ops, op_cost::svm_general(10, 12, p.t));
  EXPECT_EQ(k.ops, op_cost::svm_kernel(10, p.t));
  EXPECT_EQ(k.build_ops, op_cost::build_kernel(10, 12));
  EXPECT_EQ(g.build_ops, OpCounts{});
  EXPECT_DOUBLE_EQ(k.seconds, ckks.seconds(k.ops) + ckks.seconds(k.build_ops));
  p.build_share = 0.25;
  EXPECT_DOUBLE_EQ(estimate("svm", Variant::kernel, p, ckks).build_seconds,
                   0.25 * ckks.seconds(k.build_ops));
  EXPECT_EQ(estimate("tv", Variant::kernel, p, ckks).algorithm, "total_variance");
}

TEST(Estimate, BoolMatchesCircuitCosts) {
  const CostProfile tfhe = find_profile("tfhe");
  EstimateParams p;
  p.n = 5;
  p.d = 3;
  p.k = 2;
  p.t = 2;
  const auto g = estimate("kmeans", Variant::general, p, tfhe, Backend::boolean);
  EXPECT_EQ(g.gate_units, total_units(gate_cost::kmeans_general(5, 3, 2, 2, 16)));
  const auto k = estimate("kmeans", Variant::kernel, p, tfhe, Backend::boolean);
  EXPECT_EQ(k.gate_units, total_units(gate_cost::kmeans_kernel(5, 2, 2, 16)));
  EXPECT_EQ(k.build_gate_units, gate_cost::build_kernel(5, 3, 16));
  const auto kn = estimate("knn", Variant::kernel, p, tfhe, Backend::boolean);
  EXPECT_EQ(kn.gate_units, total_units(gate_cost::knn_kernel(5, 2, 2, 16)) + 5 * gate_cost::dot(3, 16));
  EXPECT_DOUBLE_EQ(kn.eval_seconds, tfhe.gate_seconds(kn.gate_units));
  EXPECT_THROW(estimate("knn", Variant::general, p, tfhe, Backend::arith), UnsupportedAlgorithm);
  EXPECT_THROW(estimate("kmeans", Variant::general, p, find_profile("plain"), Backend::boolean),
               ValidationError);
}

TEST(Estimate, UnsupportedAlgorithms) {
  for (const char* a : {"lda", "linear_regression", "ridge", ""})
    EXPECT_THROW(check_algorithm(a), UnsupportedAlgorithm) << a;
  EXPECT_TRUE(has_backend("knn", Backend::boolean));
  EXPECT_FALSE(has_backend("svm", Backend::boolean));
  EXPECT_EQ(supported_algorithms().size(), 8u);
  EXPECT_THROW(parse_variant("both"), ValidationError);
  EXPECT_EQ(parse_backend("bool"), Backend::boolean);
}

TEST(Estimate, KernelEvaluationIsDimensionless) {
  const CostProfile bfv = find_profile("bfv");
  for (const std::string a : {"svm", "total_variance", "distance", "norm", "similarity", "kmeans"}) {
    EstimateParams p;
    p.n = 10;
    OpCounts first;
    std::vector<uint64_t> general;
    for (size_t d : {5u, 10u, 15u}) {
      p.d = d;
      const OpCounts k = estimate(a, Variant::kernel, p, bfv).ops;
      if (d == 5) first = k;
      EXPECT_EQ(k, first) << a;
      general.push_back(estimate(a, Variant::general, p, bfv).ops.mults);
    }
    EXPECT_EQ(general[2] - general[1], general[1] - general[0]) << a;
    EXPECT_GT(general[1], general[0]) << a;
  }
}

TEST(Estimate, EffFollowsMultShare) {
  // At a fixed add time, EFF rises with the mult time exactly when the general
  // path has the larger mult/add share.
  for (const std::string a : {"svm", "total_variance", "distance", "kmeans"}) {
    EstimateParams p;
    p.n = 10;
    p.d = 50;
    for (const bool with_build : {false, true}) {
      const CostProfile unit{"x", 1.0, 1.0, {}, ""};
      const auto g = estimate(a, Variant::general, p, unit);
      const auto k = estimate(a, Variant::kernel, p, unit);
      const OpCounts ko = with_build ? k.ops + k.build_ops : k.ops;
      const double share_g = double(g.ops.mults) / double(g.ops.adds);
      const double share_k = double(ko.mults) / double(ko.adds);
      double prev = -1;
      for (double m : {1.0, 2.0, 10.0, 100.0}) {
        const CostProfile prof{"x", 1.0, m, {}, ""};
        const double e = eff(estimate(a, Variant::general, p, prof).seconds,
                             with_build ? estimate(a, Variant::kernel, p, prof).seconds
                                        : estimate(a, Variant::kernel, p, prof).eval_seconds);
        if (prev > 0) {
          EXPECT_EQ(e > prev, share_g > share_k) << a << " " << m << " " << with_build;
        }
        prev = e;
      }
    }
  }
  // Kernel SVM spends two mults per add; the general loop barely more than one.
  EXPECT_GT(double(op_cost::svm_kernel(10, 1).mults) / double(op_cost::svm_kernel(10, 1).adds),
            double(op_cost::svm_general(10, 50, 1).mults) / double(op_cost::svm_general(10, 50, 1).adds));
}

TEST(Simulation, KmeansFieldsAreConsistent) {
  const CostProfile bfv = find_profile("bfv");
  const KmeansSimulation s = simulate_kmeans_ratio(10, 784, 3, 10, bfv);
  EXPECT_EQ(s.general_ops, op_cost::kmeans_general(10, 784, 3, 10));
  EXPECT_EQ(s.kernel_ops, op_cost::kmeans_kernel(10, 3, 10));
  EXPECT_DOUBLE_EQ(s.t_ker, bfv.seconds(s.kernel_ops) + s.t_build);
  EXPECT_DOUBLE_EQ(s.eff, s.t_gen / s.t_ker);
  EXPECT_GT(s.eff_eval_only, s.eff);
  EXPECT_THROW(simulate_kmeans_ratio(0, 1, 1, 1, bfv), ValidationError);
}

TEST(Simulation, SvmHeadline) {
  const SvmHeadline h = svm_headline_estimate(find_profile("ckks"), 10, 784, 10000);
  EXPECT_GT(h.eff, 150);
  EXPECT_LT(h.eff, 400);
  EXPECT_LT(h.kernelization_fraction, 0.05);
  EXPECT_DOUBLE_EQ(h.t_ker, find_profile("ckks").seconds(op_cost::svm_kernel(10, 10000)) + h.t_build);
}
