#include "support/oracles.hpp"

#include <polyframe/error.hpp>
#include <polyframe/generators.hpp>
#include <polyframe/io.hpp>
#include <polyframe/reduction.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace polyframe;

namespace {

PlaneTree h3_tree() {
  Poset t = Poset::from_relations({"bot", "a", "b", "c", "d", "e"},
                                  {{"bot", "a"}, {"bot", "b"}, {"a", "c"}, {"a", "d"}, {"b", "e"}});
  return {t, {t.at("c"), t.at("d"), t.at("e")}};
}

PlaneTree fork_tree() {
  Poset t = builtin_frame("two_fork");
  return {t, {t.at("t1"), t.at("t2")}};
}

void expect_verified(const Poset& frame, const Reduction& red) {
  EXPECT_EQ(red.tree.height(), frame.height());
  EXPECT_EQ(red.map.target, frame);
  EXPECT_TRUE(is_p_morphism(red.map).ok()) << describe(red.map, is_p_morphism(red.map));
  EXPECT_TRUE(is_surjective(red.map));
  std::vector<int> image(red.map.image.begin(), red.map.image.end());
  EXPECT_TRUE(oracle::is_p_morphism(oracle::Rel::of(red.map.source), oracle::Rel::of(frame), image));
}

}  // namespace

TEST(SawedTree, TwoForkGainsOneSaw) {
  auto st = build_sawed_tree(fork_tree());
  EXPECT_EQ(st.saw_nodes().size(), 1u);
  EXPECT_EQ(st.height(), 2);
  EXPECT_EQ(st.frame().name(st.saw_nodes()[0]), "s1");
}

TEST(SawedTree, HeightThreeTreeGetsTwoSaws) {
  auto st = build_sawed_tree(h3_tree());
  ASSERT_EQ(st.saw_nodes().size(), 2u);
  const auto& f = st.frame();
  EXPECT_EQ(f.lower_covers(st.saw_nodes()[0]), (std::vector<ElementId>{f.at("c"), f.at("d")}));
  EXPECT_EQ(f.lower_covers(st.saw_nodes()[1]), (std::vector<ElementId>{f.at("d"), f.at("e")}));
  auto j = io::read_json_file(POLYFRAME_DATA_DIR "/height3.json");
  auto stored = io::sawed_tree_from_json(j);
  EXPECT_TRUE(find_isomorphism(stored.frame(), f).has_value());
}

TEST(SawedTree, SingleTopIsRejected) {
  Poset chain = builtin_frame("2-chain");
  EXPECT_THROW(build_sawed_tree({chain, {chain.at("c1")}}), PreconditionError);
}

TEST(SawedTree, InvariantsAreChecked) {
  auto st = build_sawed_tree(h3_tree());
  const auto& f = st.frame();
  // Saws listed in the wrong order no longer sit above consecutive tops.
  EXPECT_THROW(SawedTree(f, st.tops_order(), {st.saw_nodes()[1], st.saw_nodes()[0]}), InvariantError);
  PlaneTree bad{h3_tree().tree, {}};
  bad.tops_order = {bad.tree.at("c"), bad.tree.at("e"), bad.tree.at("d")};
  EXPECT_THROW(bad.validate(), InvariantError);
}

TEST(Drawing, TwoFork) {
  auto pt = fork_tree();
  auto d = plane_drawing(pt);
  const auto& t = pt.tree;
  EXPECT_EQ(d.x[t.at("t1")], 0);
  EXPECT_EQ(d.y[t.at("t1")], 1);
  EXPECT_EQ(d.x[t.at("t2")], 1);
  EXPECT_EQ(d.x[t.at("r")], Rational(1, 2));
  EXPECT_EQ(d.y[t.at("r")], 0);
}

TEST(Drawing, HeightThreeTreeMidpoints) {
  auto pt = h3_tree();
  auto d = plane_drawing(pt);
  const auto& t = pt.tree;
  EXPECT_EQ(d.x[t.at("c")], 0);
  EXPECT_EQ(d.x[t.at("d")], 1);
  EXPECT_EQ(d.x[t.at("e")], 2);
  EXPECT_EQ(d.x[t.at("a")], Rational(1, 2));
  EXPECT_EQ(d.x[t.at("b")], 2);
  EXPECT_EQ(d.x[t.at("bot")], Rational(5, 4));
  EXPECT_TRUE(check_plane_drawing(t, d, pt.tops_order).pass);
}

TEST(Drawing, CrossingIsDetected) {
  auto pt = h3_tree();
  auto d = plane_drawing(pt);
  const auto& t = pt.tree;
  d.x[t.at("b")] = -1;
  auto r = check_plane_drawing(t, d, pt.tops_order);
  EXPECT_FALSE(r.pass);
  EXPECT_FALSE(r.reason.empty());
  EXPECT_TRUE(segments_intersect(0, 0, 2, 2, 0, 2, 2, 0));
  EXPECT_FALSE(segments_intersect(0, 0, 1, 0, 2, 0, 3, 0));
  EXPECT_TRUE(segments_intersect(0, 0, 2, 0, 1, 0, 3, 0));
}

TEST(Drawing, RandomPlaneTreesPass) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    auto pt = random_plane_tree(1 + trial % 4, 3, rng);
    EXPECT_TRUE(check_plane_drawing(pt.tree, plane_drawing(pt), pt.tops_order).pass);
    auto st = build_sawed_tree(pt);
    EXPECT_TRUE(check_plane_drawing(st.frame(), plane_drawing(st), st.tops_order()).pass);
  }
}

TEST(Zigzag, TrivialPaths) {
  auto st = build_sawed_tree(fork_tree());
  auto s1 = st.saw_nodes()[0];
  EXPECT_EQ(zigzag_path(st.frame(), s1, s1), (std::vector<ElementId>{s1}));
}

TEST(Zigzag, HeightThreeSaws) {
  auto st = build_sawed_tree(h3_tree());
  const auto& f = st.frame();
  auto path = zigzag_path(f, st.saw_nodes()[0], st.saw_nodes()[1]);
  ASSERT_EQ(path.size(), 3u);
  EXPECT_EQ(path[1], f.at("d"));
  EXPECT_EQ(check_zigzag(f, path), "");
  EXPECT_NE(check_zigzag(f, {st.saw_nodes()[0], f.at("c")}), "");
}

TEST(Zigzag, RandomPlFrames) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 30; ++trial) {
    auto p = random_pl_frame(2 + trial % 3, 12, rng);
    auto root = *p.root();
    std::vector<ElementId> tops;
    for (auto x : members(p.strict_up(root))) {
      if (p.upper_covers(x).empty()) tops.push_back(x);
    }
    auto path = zigzag_path(p, tops.front(), tops.back());
    EXPECT_EQ(path.front(), tops.front());
    EXPECT_EQ(path.back(), tops.back());
    EXPECT_EQ(check_zigzag(p, path), "");
  }
}

TEST(Reduce, HeightThreeFrame) {
  auto j = io::read_json_file(POLYFRAME_DATA_DIR "/height3.json");
  Poset frame = io::frame_from_json(j);
  auto red = reduce_to_sawed_tree(frame);
  EXPECT_EQ(red.tree.height(), 3);
  expect_verified(frame, red);
}

TEST(Reduce, SmallFrames) {
  for (const char* name : {"3-chain", "4-chain"}) {
    Poset p = builtin_frame(name);
    expect_verified(p, reduce_to_sawed_tree(p));
  }
  auto fork = build_sawed_tree(fork_tree());
  expect_verified(fork.frame(), reduce_to_sawed_tree(fork.frame()));
}

TEST(Reduce, Preconditions) {
  EXPECT_THROW(reduce_to_sawed_tree(builtin_frame("scott")), PreconditionError);
  EXPECT_THROW(reduce_to_sawed_tree(builtin_frame("two_fork")), PreconditionError);
  EXPECT_THROW(reduce_to_sawed_tree(Poset::from_relations({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}})),
               PreconditionError);
}

TEST(Reduce, RandomPlFrames) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 30; ++trial) {
    auto p = random_pl_frame(2 + trial % 3, 12, rng);
    expect_verified(p, reduce_to_sawed_tree(p));
  }
}

TEST(Reduce, AllSmallRootedPlFrames) {
  for (const auto& p : oracle::rooted_posets_up_to_iso(6)) {
    if (p.height() < 2 || !satisfies_pl(p).pass()) continue;
    expect_verified(p, reduce_to_sawed_tree(p));
  }
}
