#include "chpolar/errors.hpp"
#include "chpolar/polar_actions.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>

using namespace chpolar;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(EnumerateModuli, NineClassesForN2) {
  const Catalog c = enumerate_moduli(2, {});
  ASSERT_EQ(c.classes.size(), 9u);
  std::vector<std::string> labels;
  for (const auto& e : c.classes) labels.push_back(e.label);
  for (const char* expected : {"I k=0 q=u(2)", "I k=0 q=t^2", "I k=1 q=u(1)", "I k=2 q=trivial", "II b=a w=[]",
                               "II b=0 w=[]", "II b=a w=[pi/2:1]", "II b=0 w=[pi/2:1]", "II b=0 w=[0:2]"}) {
    EXPECT_NE(std::find(labels.begin(), labels.end(), expected), labels.end()) << expected;
  }
  for (const auto& e : c.classes) {
    const PolarityReport r = check_polarity(e.spec);
    EXPECT_TRUE(r.verdict) << e.label;
    EXPECT_FALSE(r.transitive) << e.label;
    EXPECT_EQ(r.cohomogeneity, e.cohomogeneity) << e.label;
  }
  EXPECT_GE(c.candidates, 9);
}

TEST(EnumerateModuli, ClassesArePairwiseNotEquivalent) {
  const Catalog c = enumerate_moduli(2, {});
  for (std::size_t i = 0; i < c.classes.size(); ++i) {
    for (std::size_t j = i + 1; j < c.classes.size(); ++j) {
      EXPECT_NE(orbit_equivalence_invariants(c.classes[i].spec, c.classes[j].spec).equivalent, Trilean::Yes);
    }
  }
}

TEST(EnumerateModuli, N3CountGrowsWithGrid) {
  const std::vector<double> grid = {kPi / 6, kPi / 4, kPi / 3};
  std::size_t previous = 0;
  const std::vector<std::size_t> frozen = {17, 19, 21, 23};
  for (std::size_t k = 0; k <= grid.size(); ++k) {
    const Catalog c = enumerate_moduli(3, std::vector<double>(grid.begin(), grid.begin() + static_cast<long>(k)));
    if (k > 0) EXPECT_GT(c.classes.size(), previous);
    EXPECT_EQ(c.classes.size(), frozen[k]);
    previous = c.classes.size();
  }
}

TEST(EnumerateModuli, Errors) {
  EXPECT_THROW(enumerate_moduli(1, {}), DomainError);
  EXPECT_THROW(enumerate_moduli(3, {0.0}), DomainError);
  EXPECT_THROW(enumerate_moduli(3, {kPi / 2}), DomainError);
}
