#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "rsc/game.hpp"

using namespace rsc;

TEST_CASE("builtin utility tables") {
  Game pd = builtin_game("prisoners_dilemma");
  CHECK(pd.utilities[0] == std::array<double, 2>{3, 3});  // (T,L)
  CHECK(pd.utilities[1] == std::array<double, 2>{0, 4});  // (T,R)
  CHECK(pd.utilities[2] == std::array<double, 2>{4, 0});  // (B,L)
  CHECK(pd.utilities[3] == std::array<double, 2>{1, 1});  // (B,R)

  Game bos = builtin_game("battle_of_sexes");
  CHECK(bos.utilities[0] == std::array<double, 2>{0, 0});
  CHECK(bos.utilities[1] == std::array<double, 2>{2, 1});
  CHECK(bos.utilities[2] == std::array<double, 2>{1, 2});
  CHECK(bos.utilities[3] == std::array<double, 2>{0, 0});

  CHECK_THROWS_AS(builtin_game("chicken"), std::invalid_argument);
}

TEST_CASE("observation channel endpoints") {
  Channel id = observation_channel(0.0);
  for (int i = 0; i < 4; ++i) {
    for (int y = 0; y < 4; ++y) CHECK(id.at(i, y) == doctest::Approx(i == y ? 1.0 : 0.0));
  }

  Channel blind = observation_channel(1.0);
  for (int i = 0; i < 4; ++i) {
    for (int y = 0; y < 4; ++y) CHECK(blind.at(i, y) == doctest::Approx(0.25));
  }

  Channel half = observation_channel(0.5);
  for (int i = 0; i < 4; ++i) {
    for (int y = 0; y < 4; ++y) {
      CHECK(half.at(i, y) == doctest::Approx(i == y ? 0.625 : 0.125));
    }
  }

  CHECK_THROWS_AS(observation_channel(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(observation_channel(1.5), std::invalid_argument);
}

TEST_CASE("observation channel rows stay stochastic across the sweep") {
  for (int i = 0; i <= 100; ++i) {
    Channel ch = observation_channel(i / 100.0);
    CHECK_NOTHROW(validate(ch));
  }
}

TEST_CASE("observation family bundles its parameters with the channel") {
  ObservationFamily fam = make_observation_family(0.5);
  CHECK(fam.epsilon == 0.5);
  CHECK(fam.signal_count == 4);
  CHECK(fam.channel.at(2, 2) == doctest::Approx(1.0 - 0.75 * 0.5));
  CHECK(fam.channel.at(2, 0) == doctest::Approx(0.5 / 4.0));
}

TEST_CASE("expected utility") {
  Game pd = builtin_game("pd");
  auto corner = expected_utility(pd, {point_mass(2, 1), point_mass(2, 0)});
  CHECK(corner[0] == doctest::Approx(4.0));
  CHECK(corner[1] == doctest::Approx(0.0));

  auto mixed = expected_utility(pd, {uniform_dist(2), uniform_dist(2)});
  CHECK(mixed[0] == doctest::Approx(2.0));
  CHECK(mixed[1] == doctest::Approx(2.0));

  Game bos = builtin_game("bos");
  auto br = expected_utility(bos, {point_mass(2, 1), point_mass(2, 1)});
  CHECK(br[0] == doctest::Approx(0.0));
  CHECK(br[1] == doctest::Approx(0.0));

  CHECK_THROWS_AS(expected_utility(pd, {uniform_dist(3), uniform_dist(2)}), ModelError);
}

TEST_CASE("expected utility is bilinear in the mixed actions") {
  Game pd = builtin_game("pd");
  for (double p : {0.0, 0.3, 0.65, 1.0}) {
    for (double q : {0.0, 0.2, 0.8, 1.0}) {
      auto u = expected_utility(pd, {Dist{{p, 1 - p}}, Dist{{q, 1 - q}}});
      // Interpolate the pure rows by hand.
      auto at = [&](int a, int b) { return pd.utilities[static_cast<size_t>(2 * a + b)]; };
      for (int player = 0; player < 2; ++player) {
        double by_hand = p * (q * at(0, 0)[player] + (1 - q) * at(0, 1)[player]) +
                         (1 - p) * (q * at(1, 0)[player] + (1 - q) * at(1, 1)[player]);
        CHECK(std::abs(u[static_cast<size_t>(player)] - by_hand) <= 1e-12);
      }
    }
  }
}

TEST_CASE("degenerate grid hits the four pure corners") {
  Game pd = builtin_game("pd");
  auto points = sweep_region(pd, 3.0, 0.5, 1.0);
  REQUIRE(points.size() == 4);
  // Ordered by (p, q): (0,0)=(B,R), (0,1)=(B,L), (1,0)=(T,R), (1,1)=(T,L).
  CHECK(points[0].u1 == doctest::Approx(1.0));
  CHECK(points[1].u1 == doctest::Approx(4.0));
  CHECK(points[2].u1 == doctest::Approx(0.0));
  CHECK(points[3].u1 == doctest::Approx(3.0));
}

TEST_CASE("capacity three clears the alphabet bound everywhere") {
  auto points = sweep_region(builtin_game("pd"), 3.0, 0.5, 0.1);
  CHECK(std::all_of(points.begin(), points.end(),
                    [](const RegionPoint& p) { return p.achievable && p.rate_star < 2.0 + 1e-9; }));
}

TEST_CASE("the bundled capacity excludes the uniform point") {
  auto points = sweep_region(builtin_game("pd"), 1.7, 0.5, 0.25);
  auto mid = std::find_if(points.begin(), points.end(), [](const RegionPoint& p) {
    return p.p == 0.5 && p.q == 0.5;
  });
  REQUIRE(mid != points.end());
  CHECK(mid->rate_star == doctest::Approx(1.7375168162362657).epsilon(1e-12));
  CHECK_FALSE(mid->achievable);
}

TEST_CASE("positive noise forces at least one bit of rate") {
  auto points = sweep_region(builtin_game("pd"), 0.5, 0.5, 0.2);
  for (const RegionPoint& p : points) {
    CHECK(p.rate_star >= 1.0 - 1e-12);
    CHECK_FALSE(p.achievable);
  }
}

TEST_CASE("a point sitting exactly on the capacity is not achievable") {
  // Pure corners cost exactly one bit at eps > 0; strict inequality rules
  // them out when the capacity is exactly one bit.
  auto points = sweep_region(builtin_game("pd"), 1.0, 0.5, 1.0);
  for (const RegionPoint& p : points) {
    CHECK(p.rate_star == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(p.achievable);
  }
}

TEST_CASE("achievable regions grow with capacity") {
  auto tight = sweep_region(builtin_game("pd"), 1.7, 0.5, 0.05);
  auto loose = sweep_region(builtin_game("pd"), 2.1, 0.5, 0.05);
  REQUIRE(tight.size() == loose.size());
  REQUIRE(tight.size() == 441);  // 21 x 21
  for (size_t i = 0; i < tight.size(); ++i) {
    if (tight[i].achievable) CHECK(loose[i].achievable);
  }
}

TEST_CASE("both bundled games keep a nonempty region at the bundled capacity") {
  for (const char* name : {"pd", "bos"}) {
    auto points = sweep_region(builtin_game(name), 1.7, 0.5, 0.05);
    long achievable = std::count_if(points.begin(), points.end(),
                                    [](const RegionPoint& p) { return p.achievable; });
    CHECK(achievable > 0);
    CHECK(achievable < static_cast<long>(points.size()));
    // Near-pure strategies drain the side entropy, so the corners squeeze
    // under the capacity with one color bit to spare.
    CHECK(points.front().rate_star == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(points.front().achievable);
  }
}

TEST_CASE("region CSV round-trips byte for byte") {
  auto points = sweep_region(builtin_game("bos"), 1.7, 0.5, 0.5);
  std::string csv = region_csv(points);
  auto back = parse_region_csv(csv);
  CHECK(region_csv(back) == csv);
  CHECK(back.size() == points.size());
}
