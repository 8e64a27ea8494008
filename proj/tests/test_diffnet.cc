// Copyright 2026 The badgr-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include <gtest/gtest.h>

#include "badgr/common/rng.h"
#include "badgr/diffnet/gru.h"
#include "badgr/diffnet/ops.h"
#include "badgr/diffnet/param_store.h"
#include "support/gradcheck.h"

namespace badgr::diffnet {
namespace {

using testing::GradCase;

TEST(Tensor, ShapeChecks) {
  EXPECT_THROW(Tensor({2, 3}, std::vector<double>(5)), ShapeError);
  const Tensor t({2, 3}, {1, 2, 3, 4, 5, 6});
  EXPECT_EQ(t.at(1, 2), 6);
  EXPECT_EQ(t.reshaped({3, 2}).at(2, 0), 5);
  EXPECT_THROW(t.reshaped({4, 2}), ShapeError);
}

TEST(Ops, ShapeErrorNamesPrimitive) {
  Tape tape;
  Var a = tape.constant(Tensor({2, 3}));
  Var b = tape.constant(Tensor({2, 3}));
  try {
    matmul(a, b);
    FAIL() << "expected ShapeError";
  } catch (const ShapeError& e) {
    EXPECT_NE(std::string(e.what()).find("matmul"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("[2x3]"), std::string::npos) << e.what();
  }
  EXPECT_THROW(add(a, tape.constant(Tensor({4}))), ShapeError);
  EXPECT_THROW(slice(a, 1, 2, 5), ShapeError);
}

TEST(Ops, TanhAtZero) {
  Tape tape;
  Var x = tape.variable(Tensor::scalar(0.0));
  Var y = tanh(x);
  tape.backward(y);
  EXPECT_EQ(y.value()[0], 0.0);
  EXPECT_DOUBLE_EQ(x.grad()[0], 1.0);
}

TEST(Ops, SigmoidCrossEntropyGradientIsPMinusY) {
  for (double logit : {-3.0, -0.4, 0.0, 1.7}) {
    for (double y : {0.0, 1.0, 1.0 / (1.0 + std::exp(-logit))}) {
      Tape tape;
      Var x = tape.variable(Tensor({1}, {logit}));
      tape.backward(reduce_sum(sigmoid_cross_entropy(x, tape.constant(Tensor({1}, {y})))));
      const double p = 1.0 / (1.0 + std::exp(-logit));
      EXPECT_NEAR(x.grad()[0], p - y, 1e-12);
    }
  }
}

TEST(Ops, SaturatedCrossEntropyIsStable) {
  Tape tape;
  Var x = tape.constant(Tensor({2}, {800.0, -800.0}));
  Var l = sigmoid_cross_entropy(x, tape.constant(Tensor({2}, {1.0, 0.0})));
  EXPECT_TRUE(l.value().all_finite());
  EXPECT_LT(l.value()[0], 1e-12);
}

TEST(Ops, BroadcastBiasGradientSumsRows) {
  Tape tape;
  Var a = tape.variable(Tensor({3, 2}, {1, 2, 3, 4, 5, 6}));
  Var b = tape.variable(Tensor({2}, {0.5, -0.5}));
  tape.backward(reduce_sum(add(a, b)));
  EXPECT_EQ(b.grad()[0], 3.0);
  EXPECT_EQ(b.grad()[1], 3.0);
}

TEST(GradCheck, EveryPrimitive) {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    for (const GradCase& c : testing::primitive_cases(seed)) {
      EXPECT_LT(testing::gradcheck(c), 1e-4) << c.name << " seed " << seed;
    }
  }
}

TEST(GradCheck, RandomCompositeGraphs) {
  for (uint64_t seed = 0; seed < 150; ++seed) {
    const GradCase c = testing::random_graph(seed);
    EXPECT_LT(testing::gradcheck(c), 1e-4) << c.name;
  }
}

TEST(GradCheck, ModelLoss) {
  for (uint64_t seed = 1; seed <= 3; ++seed) EXPECT_LT(testing::loss_gradcheck(seed, 60), 1e-4);
}

GruParams zero_gru(Tape& tape, size_t in, size_t hid) {
  return {tape.variable(Tensor({in, 3 * hid})), tape.variable(Tensor({hid, 3 * hid})),
          tape.variable(Tensor({3 * hid})), tape.variable(Tensor({3 * hid}))};
}

TEST(Gru, ZeroWeightsHalveState) {
  Tape tape;
  const GruParams p = zero_gru(tape, 3, 4);
  Var h = tape.constant(Tensor({2, 4}, {1, -2, 0.5, 3, 0, 7, -1, 2}));
  Var x = tape.constant(Tensor({2, 3}, {4, 5, 6, 7, 8, 9}));
  const Tensor out = gru_cell(h, x, p).value();
  for (size_t i = 0; i < out.size(); ++i) EXPECT_DOUBLE_EQ(out[i], 0.5 * h.value()[i]);
}

TEST(Gru, RankOneBatchOfOne) {
  Tape tape;
  const GruParams p = zero_gru(tape, 2, 3);
  const Tensor out = gru_cell(tape.constant(Tensor({3}, {2, 4, 6})), tape.constant(Tensor({2})), p).value();
  EXPECT_EQ(out.shape(), Shape({3}));
  EXPECT_DOUBLE_EQ(out[2], 3.0);
}

TEST(Gru, EightStepUnrollMatchesFiniteDifferences) {
  Rng rng(11);
  const size_t in = 2, hid = 3, batch = 2;
  auto rt = [&](Shape s) {
    Tensor t(s);
    for (double& v : t.values()) v = uniform(rng, -0.8, 0.8);
    return t;
  };
  std::vector<Tensor> inputs{rt({batch, hid}), rt({in, 3 * hid}), rt({hid, 3 * hid}), rt({3 * hid}),
                             rt({3 * hid})};
  for (int t = 0; t < 8; ++t) inputs.push_back(rt({batch, in}));
  const Tensor w = rt({batch, hid});
  GradCase c{"gru8",
             [w](Tape& tape, const std::vector<Var>& x) {
               Var h = x[0];
               for (size_t t = 0; t < 8; ++t) h = gru_cell(h, x[5 + t], {x[1], x[2], x[3], x[4]});
               return reduce_sum(mul(h, tape.constant(w)));
             },
             inputs};
  EXPECT_LT(testing::gradcheck(c), 1e-4);
}

TEST(Gru, Pure) {
  auto run = [] {
    Tape tape;
    Rng rng(3);
    GruParams p = zero_gru(tape, 2, 2);
    Tensor w({2, 6});
    for (double& v : w.values()) v = uniform(rng, -1, 1);
    p.w_x = tape.constant(w);
    return gru_cell(tape.constant(Tensor({2}, {0.3, -0.2})), tape.constant(Tensor({2}, {1, 2})), p).value();
  };
  EXPECT_EQ(run(), run());
}

TEST(Adam, ZeroGradientLeavesParameters) {
  ParamStore s;
  s.add("w", Tensor({3}, {1, 2, 3}));
  adam_update(s, {Tensor({3})});
  EXPECT_EQ(s.value(0), Tensor({3}, {1, 2, 3}));
  EXPECT_EQ(s.step(), 1);
}

TEST(Adam, FirstStepMovesByLearningRate) {
  ParamStore s;
  s.add("w", Tensor({3}, {1, 2, 3}));
  AdamConfig cfg;
  cfg.lr = 0.01;
  adam_update(s, {Tensor({3}, {0.5, -4.0, 1e-3})}, cfg);
  EXPECT_NEAR(s.value(0)[0], 1 - 0.01, 1e-6);
  EXPECT_NEAR(s.value(0)[1], 2 + 0.01, 1e-6);
  EXPECT_NEAR(s.value(0)[2], 3 - 0.01, 1e-4);
}

TEST(Adam, NonFiniteGradientThrowsBeforeUpdate) {
  ParamStore s;
  s.add("a", Tensor({1}, {1}));
  s.add("b", Tensor({1}, {1}));
  EXPECT_THROW(adam_update(s, {Tensor({1}, {1.0}), Tensor({1}, {NAN})}), NonFiniteError);
  EXPECT_EQ(s.value(0)[0], 1.0);
  EXPECT_EQ(s.step(), 0);
}

TEST(Adam, Deterministic) {
  auto run = [] {
    ParamStore s;
    s.add("w", Tensor({2}, {0.1, -0.1}));
    for (int i = 0; i < 20; ++i) adam_update(s, {Tensor({2}, {std::sin(i * 1.0), std::cos(i * 0.5)})});
    return s.hash();
  };
  EXPECT_EQ(run(), run());
}

TEST(ParamStore, CheckpointRoundTrip) {
  ParamStore s;
  s.add("enc.w", Tensor({2, 2}, {0.1, 1.0 / 3.0, -7e-9, 12345.678}));
  s.add("enc.b", Tensor({2}, {0, 1}));
  adam_update(s, {Tensor({2, 2}, {1, 1, 1, 1}), Tensor({2}, {1, 1})});
  const std::string path = ::testing::TempDir() + "ckpt.json";
  save_checkpoint(path, s, {{"note", "x"}});
  nlohmann::json meta;
  const ParamStore r = load_checkpoint(path, &meta);
  EXPECT_EQ(r.hash(), s.hash());
  EXPECT_EQ(r.step(), 1);
  EXPECT_EQ(meta["note"], "x");
  EXPECT_THROW(s.add("enc.b", Tensor({1})), std::invalid_argument);
}

}  // namespace
}  // namespace badgr::diffnet
