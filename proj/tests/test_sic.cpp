// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "oracles/peeling.hpp"
#include "risra/sic.hpp"

namespace risra {
namespace {

using Lists = std::vector<std::vector<int>>;

ResolveOptions always_decode() {
  ResolveOptions o;
  o.sinr_threshold = 0.0;
  return o;
}

TEST(AccessGraph, AllStrongestOnOneSlot) {
  const std::vector<SlotSelection> sel(3, SlotSelection{{0}, Policy::kStrongest});
  const AccessGraph g = build_access_graph(sel, 4);
  EXPECT_EQ(g.slot_degree, (std::vector<int>{3, 0, 0, 0}));
  EXPECT_EQ(g.edge_count(), 3);
}

TEST(AccessGraph, ReplicaExample) {
  const AccessGraph g = build_access_graph(Lists{{0, 1}, {0}}, 2);
  EXPECT_EQ(g.edges(), (std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 0}}));
  EXPECT_EQ(g.slot_degree, (std::vector<int>{2, 1}));
}

TEST(AccessGraph, EdgeCountIsSumOfSelectionSizes) {
  const Lists lists{{0, 2, 3}, {1}, {}, {0, 1, 2, 3}};
  EXPECT_EQ(build_access_graph(lists, 4).edge_count(), 8);
  EXPECT_THROW(build_access_graph(Lists{{4}}, 4), std::out_of_range);
  EXPECT_THROW(build_access_graph(Lists{{0}}, -1), std::invalid_argument);
}

TEST(Resolve, TwoIndependentSingletons) {
  const Lists lists{{0}, {1}};
  const auto out = resolve(build_access_graph(lists, 2), oracle::synthetic_frame(lists, 2), always_decode());
  EXPECT_EQ(out.successes, 2);
  EXPECT_EQ(out.decoded, (std::vector<int>{0, 1}));
}

TEST(Resolve, FullCollisionDecodesNothing) {
  const Lists lists{{0}, {0}};
  const auto out = resolve(build_access_graph(lists, 2), oracle::synthetic_frame(lists, 2), always_decode());
  EXPECT_EQ(out.successes, 0);
  EXPECT_TRUE(out.trace.empty());
}

TEST(Resolve, HandTracedLedger) {
  // UE 0 in slots {0, 1}, UE 1 in slot {0}. Coefficients named z<ue><slot>.
  const Complex z00{0.8, -0.3};
  const Complex z01{0.2, 0.9};
  const Complex z10{-0.5, 0.4};
  const double noise = 0.01;
  UplinkFrame frame;
  frame.slots = {SlotLedger{{{0, z00}, {1, z10}}, noise}, SlotLedger{{{0, z01}}, noise}};
  SicDecoder dec(build_access_graph(Lists{{0, 1}, {0}}, 2), frame, always_decode());

  ASSERT_TRUE(dec.step());
  const PeelingStep first = dec.outcome().trace.at(0);
  EXPECT_EQ(first.slot, 1);
  EXPECT_EQ(first.ue, 0);
  EXPECT_DOUBLE_EQ(first.sinr, std::norm(z01) / noise);
  EXPECT_TRUE(first.decoded);

  const SlotLedger& residual = dec.frame().slots[0];
  ASSERT_EQ(residual.terms.size(), 2u);
  ASSERT_NE(residual.find(0), nullptr);
  EXPECT_EQ(residual.find(0)->coefficient, z00 - z01);
  EXPECT_EQ(residual.find(1)->coefficient, z10);
  EXPECT_EQ(residual.noise, 2.0 * noise);
  EXPECT_EQ(dec.graph().slot_degree, (std::vector<int>{1, 0}));
  EXPECT_FALSE(dec.slot_active(1));
  EXPECT_FALSE(dec.ue_active(0));
  EXPECT_TRUE(dec.ue_active(1));

  ASSERT_TRUE(dec.step());
  const PeelingStep second = dec.outcome().trace.at(1);
  EXPECT_EQ(second.iteration, 1);
  EXPECT_EQ(second.slot, 0);
  EXPECT_EQ(second.ue, 1);
  EXPECT_DOUBLE_EQ(second.sinr, std::norm(z10) / (2.0 * noise + std::norm(z00 - z01)));
  EXPECT_FALSE(dec.step());
  EXPECT_EQ(dec.outcome().successes, 2);
}

TEST(Resolve, SubtractionInjectsForeignTermsNegated) {
  // UE 1 in {0, 1}, UE 0 in {1, 2}, UE 2 in {2}. Slot 0 peels UE 1 and leaves
  // a residual for it in slot 1; peeling UE 0 there carries that residual,
  // negated, into slot 2 where UE 1 never transmitted.
  const Lists lists{{1, 2}, {0, 1}, {2}};
  const UplinkFrame frame = oracle::synthetic_frame(lists, 3, 0.25);
  auto c = [&](int ue, int slot) { return frame.slots[slot].find(ue)->coefficient; };
  SicDecoder dec(build_access_graph(lists, 3), frame, always_decode());

  ASSERT_TRUE(dec.step());
  EXPECT_EQ(dec.outcome().trace[0].slot, 0);
  EXPECT_EQ(dec.frame().slots[1].find(1)->coefficient, c(1, 1) - c(1, 0));
  EXPECT_EQ(dec.frame().slots[2].terms.size(), 2u);

  ASSERT_TRUE(dec.step());
  EXPECT_EQ(dec.outcome().trace[1].slot, 1);
  EXPECT_EQ(dec.outcome().trace[1].ue, 0);
  const SlotLedger& s2 = dec.frame().slots[2];
  ASSERT_EQ(s2.terms.size(), 3u);
  EXPECT_EQ(s2.find(0)->coefficient, c(0, 2) - c(0, 1));
  EXPECT_EQ(s2.find(1)->coefficient, -(c(1, 1) - c(1, 0)));
  EXPECT_EQ(s2.find(2)->coefficient, c(2, 2));
  EXPECT_DOUBLE_EQ(s2.noise, 0.75);
  // Slot 0 was never a subtraction target.
  EXPECT_EQ(dec.frame().slots[0].noise, 0.25);

  ASSERT_TRUE(dec.step());
  EXPECT_EQ(dec.outcome().successes, 3);
  EXPECT_FALSE(dec.step());
}

TEST(Resolve, StaleLedgerTermIsRejected) {
  const Lists lists{{0, 1}, {1, 2}, {0}};
  UplinkFrame frame = oracle::synthetic_frame(lists, 3);
  frame.slots[2].terms.push_back({5, Complex{0.0, 0.0}});
  EXPECT_THROW(SicDecoder(build_access_graph(lists, 3), frame, always_decode()), std::logic_error);
}

TEST(Resolve, InconsistentInputsAreInternalErrors) {
  const Lists lists{{0, 1}};
  UplinkFrame frame = oracle::synthetic_frame(lists, 2);
  EXPECT_THROW(SicDecoder(build_access_graph(lists, 3), frame), std::logic_error);
  frame.slots[1].terms.clear();
  EXPECT_THROW(SicDecoder(build_access_graph(lists, 2), frame), std::logic_error);
  EXPECT_THROW(slot_sinr(SlotLedger{{{0, 1.0}}, 1.0}, 3), std::logic_error);
  ResolveOptions bad = always_decode();
  bad.slot_priority = {0, 0};
  EXPECT_THROW(SicDecoder(build_access_graph(lists, 2), oracle::synthetic_frame(lists, 2), bad),
               std::invalid_argument);
}

TEST(Resolve, FailedDecodeDropsEdgesByDefault) {
  // UE 0 fails in singleton slot 0; its edge to slot 1 disappears, so UE 1
  // becomes a singleton there but still suffers UE 0's interference.
  UplinkFrame frame;
  frame.slots = {SlotLedger{{{0, 0.01}}, 1.0}, SlotLedger{{{0, 1.0}, {1, 3.0}}, 1.0}};
  const AccessGraph g = build_access_graph(Lists{{0, 1}, {1}}, 2);
  ResolveOptions opt;
  opt.sinr_threshold = 1.0;
  const auto out = resolve(g, frame, opt);
  ASSERT_EQ(out.trace.size(), 2u);
  EXPECT_FALSE(out.trace[0].decoded);
  EXPECT_EQ(out.trace[1].ue, 1);
  EXPECT_DOUBLE_EQ(out.trace[1].sinr, 9.0 / 2.0);
  EXPECT_EQ(out.successes, 1);

  opt.on_failure = FailedDecodeRule::kKeepEdges;
  const auto kept = resolve(g, frame, opt);
  EXPECT_EQ(kept.successes, 0);
  EXPECT_EQ(kept.trace.size(), 1u);
}

TEST(Resolve, KeepEdgesRetriesLaterSingleton) {
  // Single UE in slots {0, 1}: weak in 0, strong in 1.
  UplinkFrame frame;
  frame.slots = {SlotLedger{{{0, 0.1}}, 1.0}, SlotLedger{{{0, 5.0}}, 1.0}};
  const AccessGraph g = build_access_graph(Lists{{0, 1}}, 2);
  ResolveOptions opt;
  EXPECT_EQ(resolve(g, frame, opt).successes, 0);
  opt.on_failure = FailedDecodeRule::kKeepEdges;
  const auto out = resolve(g, frame, opt);
  EXPECT_EQ(out.successes, 1);
  EXPECT_EQ(out.trace.size(), 2u);
}

TEST(Resolve, NoReplicasWithZeroThresholdCountsInitialSingletons) {
  Rng rng{21};
  for (int trial = 0; trial < 500; ++trial) {
    const int s_count = 1 + static_cast<int>(rng() % 6);
    const int k_count = static_cast<int>(rng() % 9);
    Lists lists(k_count);
    for (auto& l : lists) l.push_back(static_cast<int>(rng() % s_count));
    const AccessGraph g = build_access_graph(lists, s_count);
    const int singletons = static_cast<int>(std::count(g.slot_degree.begin(), g.slot_degree.end(), 1));
    EXPECT_EQ(resolve(g, oracle::synthetic_frame(lists, s_count), always_decode()).successes, singletons);
  }
}

TEST(Resolve, ExhaustiveOracleEquivalenceAndOrderIndependence) {
  for (int k = 1; k <= 4; ++k) {
    for (int s = 1; s <= 4; ++s) {
      std::vector<int> perm(s);
      for (std::uint32_t mask = 0; mask < (1u << (k * s)); ++mask) {
        const Lists lists = oracle::decode_graph(mask, k, s);
        const AccessGraph g = build_access_graph(lists, s);
        const UplinkFrame f = oracle::synthetic_frame(lists, s);
        const int expected = oracle::peeling_sa(lists, s);
        std::iota(perm.begin(), perm.end(), 0);
        do {
          ResolveOptions opt = always_decode();
          opt.slot_priority = perm;
          const ResolutionOutcome out = resolve(g, f, opt);
          ASSERT_EQ(out.successes, expected) << "K=" << k << " S=" << s << " mask=" << mask;
          ASSERT_LE(out.successes, std::min(k, s));
          ASSERT_LE(static_cast<int>(out.trace.size()), s);
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
    }
  }
}

TEST(Resolve, LedgerConservation) {
  // A slot's term for UE j only changes when it receives a subtraction from a
  // singleton slot that held j.
  Rng rng{33};
  for (int trial = 0; trial < 300; ++trial) {
    const int s_count = 2 + static_cast<int>(rng() % 5);
    const int k_count = 1 + static_cast<int>(rng() % 6);
    Lists lists(k_count);
    for (auto& l : lists) {
      for (int s = 0; s < s_count; ++s) {
        if (rng() % 3 == 0) l.push_back(s);
      }
      if (l.empty()) l.push_back(static_cast<int>(rng() % s_count));
    }
    ResolveOptions opt;
    opt.sinr_threshold = 0.5;
    SicDecoder dec(build_access_graph(lists, s_count), oracle::synthetic_frame(lists, s_count, 0.3), opt);
    int prev_sa = 0;
    while (true) {
      const UplinkFrame before = dec.frame();
      if (!dec.step()) break;
      const PeelingStep& st = dec.outcome().trace.back();
      const SlotLedger& source = before.slots[st.slot];
      for (int s = 0; s < s_count; ++s) {
        for (const FrameTerm& t : dec.frame().slots[s].terms) {
          const FrameTerm* old = before.slots[s].find(t.ue);
          const bool changed = old == nullptr || old->coefficient != t.coefficient;
          if (changed) {
            EXPECT_TRUE(st.decoded);
            EXPECT_NE(source.find(t.ue), nullptr);
          }
        }
      }
      EXPECT_GE(dec.outcome().successes, prev_sa);
      prev_sa = dec.outcome().successes;
    }
    EXPECT_EQ(dec.outcome().successes, static_cast<int>(dec.outcome().decoded.size()));
    EXPECT_LE(dec.outcome().successes, std::min(k_count, s_count));
  }
}

TEST(SlotSinr, IncludesResidualsAndNoise) {
  const SlotLedger l{{{0, Complex{3.0, 0.0}}, {1, Complex{0.0, 1.0}}}, 0.5};
  EXPECT_DOUBLE_EQ(slot_sinr(l, 0), 9.0 / 1.5);
  EXPECT_DOUBLE_EQ(slot_sinr(l, 1), 1.0 / 9.5);
}

}  // namespace
}  // namespace risra
