#include <gtest/gtest.h>

#include <sstream>

#include "kernhe/dataset.hpp"
#include "kernhe/errors.hpp"

using namespace kernhe;

TEST(Dataset, ParsesWithHeaderAndLabels) {
  std::istringstream in("a,b,label\n1,2,1\n-0.5, 3e-1 ,2\n\n");
  const Dataset d = parse_csv(in, true);
  EXPECT_EQ(d.n, 2u);
  EXPECT_EQ(d.d, 2u);
  EXPECT_EQ(d.at(1, 0), -0.5);
  EXPECT_DOUBLE_EQ(d.at(1, 1), 0.3);
  ASSERT_TRUE(d.y.has_value());
  EXPECT_EQ((*d.y)[1], 2.0);
}

TEST(Dataset, ParsesWithoutHeader) {
  std::istringstream in("1,2,3\n4,5,6\n");
  const Dataset d = parse_csv(in, false);
  EXPECT_EQ(d.n, 2u);
  EXPECT_EQ(d.d, 3u);
  EXPECT_FALSE(d.y.has_value());
  EXPECT_EQ(d.row(1), (std::vector<double>{4, 5, 6}));
}

TEST(Dataset, Errors) {
  std::istringstream ragged("1,2\n3\n");
  EXPECT_THROW(parse_csv(ragged, false), ParseError);
  std::istringstream junk("1,2\n3,x\n");
  EXPECT_THROW(parse_csv(junk, false), ParseError);
  std::istringstream empty("h1,h2\n");
  EXPECT_THROW(parse_csv(empty, false), ParseError);
  std::istringstream one("1\n2\n");
  EXPECT_THROW(parse_csv(one, true), ParseError);
  EXPECT_THROW(ingest_dataset("/nonexistent/x.csv", false), ParseError);
  EXPECT_THROW(Dataset::from_rows({{1, 2}, {3}}), ShapeError);
  EXPECT_THROW(Dataset{}.validate(), ShapeError);
}

TEST(Dataset, SyntheticIsSeededAndBounded) {
  const Dataset a = synthetic_dataset(20, 5, 42, 3);
  const Dataset b = synthetic_dataset(20, 5, 42, 3);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(content_hash(a), content_hash(b));
  EXPECT_NE(content_hash(a), content_hash(synthetic_dataset(20, 5, 43, 3)));
  for (double v : a.x) {
    EXPECT_GE(v, -1.0);
    EXPECT_LE(v, 1.0);
  }
  for (double c : *a.y) EXPECT_TRUE(c == 1 || c == 2 || c == 3);
}

TEST(Dataset, HashSeesShape) {
  const Dataset a = Dataset::from_rows({{1, 2, 3, 4}});
  const Dataset b = Dataset::from_rows({{1, 2}, {3, 4}});
  EXPECT_NE(content_hash(a), content_hash(b));
}
