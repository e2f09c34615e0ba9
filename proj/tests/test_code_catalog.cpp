#include <gtest/gtest.h>

#include <fstream>
#include <numeric>
#include <sstream>

#include "ftqec/code_catalog.hpp"

using namespace ftqec;

namespace {

int count_of(const std::vector<int>& v, int x) { return static_cast<int>(std::count(v.begin(), v.end(), x)); }

int sum_gamma(const StabilizerCode& c, CheckType ty) {
  int s = 0;
  for (std::size_t i = 0; i < c.gamma.size(); ++i)
    if (c.gamma_type[i] == ty) s += c.gamma[i];
  return s;
}

int sum(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<StabilizerCode> matrix_codes() {
  return {build_code(Family::steane, 3),          build_code(Family::surface, 3),
          build_code(Family::surface, 5),         build_code(Family::surface, 7),
          build_code(Family::rotated_surface, 3), build_code(Family::rotated_surface, 5),
          build_code(Family::rotated_surface, 7)};
}

}  // namespace

TEST(Catalog, GeneratorsCommuteAndAreIndependent) {
  for (const auto& c : matrix_codes()) {
    SCOPED_TRACE(c.name);
    ASSERT_EQ(static_cast<int>(c.generators.size()), c.n - c.k);
    Gf2Basis<2 * kMaxQubits> basis;
    for (std::size_t i = 0; i < c.generators.size(); ++i) {
      EXPECT_TRUE(basis.insert(to_sym(c.generator(i))));
      for (std::size_t j = 0; j < i; ++j) EXPECT_TRUE(commutes(c.generator(i), c.generator(j)));
    }
  }
}

TEST(Catalog, LogicalOperators) {
  for (const auto& c : matrix_codes()) {
    SCOPED_TRACE(c.name);
    ASSERT_EQ(c.logical_x.size(), 1u);
    const auto& lx = c.logical_x[0];
    const auto& lz = c.logical_z[0];
    for (std::size_t i = 0; i < c.generators.size(); ++i) {
      EXPECT_TRUE(commutes(lx, c.generator(i)));
      EXPECT_TRUE(commutes(lz, c.generator(i)));
    }
    EXPECT_FALSE(commutes(lx, lz));
    EXPECT_FALSE(c.in_stabilizer_group(lx));
    EXPECT_FALSE(c.in_stabilizer_group(lz));
    EXPECT_GE(static_cast<int>(lx.weight()), c.d);
    EXPECT_GE(static_cast<int>(lz.weight()), c.d);
  }
}

TEST(Catalog, WeightMultiplicities) {
  auto s = build_code(Family::surface, 3);
  EXPECT_EQ(s.n, 13);
  EXPECT_EQ(s.gamma.size(), 12u);
  EXPECT_EQ(count_of(s.gamma, 3), 8);
  EXPECT_EQ(count_of(s.gamma, 4), 4);

  auto r = build_code(Family::rotated_surface, 3);
  EXPECT_EQ(r.n, 9);
  EXPECT_EQ(count_of(r.gamma, 2), 4);
  EXPECT_EQ(count_of(r.gamma, 4), 4);

  auto st = build_code(Family::steane, 3);
  auto hc = build_code(Family::honeycomb_color, 3);
  EXPECT_EQ(st.gamma, std::vector<int>(6, 4));
  EXPECT_EQ(hc.gamma, st.gamma);

  auto mb = build_code(Family::mobius, 3);
  EXPECT_EQ(mb.n, 15);
  EXPECT_EQ(mb.gamma.size(), 14u);
  EXPECT_EQ(count_of(mb.gamma, 3), 6);
  EXPECT_EQ(count_of(mb.gamma, 4), 8);
}

TEST(Catalog, ColumnWeights) {
  auto s = build_code(Family::surface, 3);
  EXPECT_EQ(count_of(s.v_z, 1), 6);
  EXPECT_EQ(count_of(s.v_z, 2), 7);
  auto g = build_code(Family::gross, 12);
  EXPECT_EQ(g.n, 144);
  EXPECT_EQ(g.k, 12);
  EXPECT_EQ(g.gamma, std::vector<int>(144, 6));
  EXPECT_EQ(g.v_z, std::vector<int>(144, 3));
  EXPECT_EQ(g.v_x, g.v_z);
  auto h = build_code(Family::honeycomb_color, 3);
  EXPECT_EQ(count_of(h.v_z, 1), 3);
  EXPECT_EQ(count_of(h.v_z, 2), 3);
  EXPECT_EQ(count_of(h.v_z, 3), 1);
}

TEST(Catalog, SurfaceClosedForms) {
  for (int d : {3, 5, 7}) {
    auto c = build_code(Family::surface, d);
    EXPECT_EQ(c.n, 2 * d * d - 2 * d + 1);
    EXPECT_EQ(count_of(c.gamma, 3), 4 * (d - 1));
    EXPECT_EQ(static_cast<int>(c.gamma.size()), 2 * d * (d - 1));
    EXPECT_EQ(count_of(c.v_z, 1), 2 * d);
    EXPECT_EQ(count_of(c.v_x, 1), 2 * d);
  }
}

TEST(Catalog, RotatedClosedFormHoldsOnlyAtDistanceThree) {
  auto r3 = build_code(Family::rotated_surface, 3);
  EXPECT_EQ(count_of(r3.gamma, 2), 4 * (3 - 2));
  for (int d : {5, 7}) {
    auto c = build_code(Family::rotated_surface, d);
    EXPECT_EQ(count_of(c.gamma, 2), 2 * (d - 1));
    EXPECT_NE(count_of(c.gamma, 2), 4 * (d - 2));
    EXPECT_EQ(count_of(c.v_z, 1), 2 * d);
  }
}

TEST(Catalog, RowAndColumnSumsAgree) {
  std::vector<StabilizerCode> codes = matrix_codes();
  for (int d : {3, 5, 7}) codes.push_back(build_code(Family::honeycomb_color, d));
  codes.push_back(build_code(Family::gross, 12));
  for (const auto& c : codes) {
    SCOPED_TRACE(c.name);
    EXPECT_EQ(sum_gamma(c, CheckType::Z), sum(c.v_z));
    EXPECT_EQ(sum_gamma(c, CheckType::X), sum(c.v_x));
  }
}

TEST(Catalog, ClosedFormDeficitForMobiusAndSquareOctagon) {
  auto m = build_code(Family::mobius, 3);
  EXPECT_EQ(sum_gamma(m, CheckType::Z), 25);
  EXPECT_EQ(sum(m.v_z), 24);
  auto so = build_code(Family::square_octagon_color, 3);
  EXPECT_EQ(sum_gamma(so, CheckType::Z), 16);
  EXPECT_EQ(sum(so.v_z), 12);
  for (int d : {5, 7}) {
    EXPECT_NE(sum_gamma(build_code(Family::mobius, d), CheckType::Z), sum(build_code(Family::mobius, d).v_z));
    auto s = build_code(Family::square_octagon_color, d);
    EXPECT_NE(sum_gamma(s, CheckType::Z), sum(s.v_z));
  }
}

TEST(Catalog, StoredEnumerators) {
  auto st = build_code(Family::steane, 3);
  ASSERT_TRUE(st.A);
  EXPECT_EQ(*st.A, (std::vector<std::uint64_t>{4, 0, 0, 0, 84, 0, 168, 0}));
  auto s = build_code(Family::surface, 3);
  ASSERT_TRUE(s.A);
  EXPECT_EQ(*s.A, (std::vector<std::uint64_t>{4, 0, 0, 32, 48, 96, 304, 768, 1812, 3456, 4464, 3552, 1560, 288}));
  for (const auto* c : {&st, &s}) {
    EXPECT_EQ((*c->A)[0], 1ull << (2 * c->k));
    EXPECT_EQ(std::accumulate(c->A->begin(), c->A->end(), std::uint64_t{0}), (1ull << (2 * c->k)) << (c->n - c->k));
  }
}

TEST(Catalog, EnumeratorMatchesGroupEnumeration) {
  for (auto fam : {Family::steane, Family::surface}) {
    auto c = build_code(fam, 3);
    auto hist = enumerate_weight_histogram(c);
    for (auto& h : hist) h <<= 2 * c.k;
    EXPECT_EQ(hist, *c.A) << c.name;
  }
  auto r = build_code(Family::rotated_surface, 3);
  auto A = weight_enumerator(r);
  EXPECT_EQ(std::accumulate(A.begin(), A.end(), std::uint64_t{0}), 4ull << 8);
  EXPECT_EQ(A[0], 4u);
}

TEST(Catalog, InvalidParameters) {
  EXPECT_THROW(build_code(Family::surface, 4), UnsupportedParameters);
  EXPECT_THROW(build_code(Family::surface, 1), UnsupportedParameters);
  EXPECT_THROW(build_code(Family::steane, 5), UnsupportedParameters);
  EXPECT_THROW(build_code(Family::surface, 9), UnsupportedParameters);
  EXPECT_THROW(parse_family("toric"), UnsupportedParameters);
  EXPECT_THROW(weight_enumerator(build_code(Family::gross, 12)), Unavailable);
}

TEST(Catalog, ProfileGroupTie) {
  auto p = code_profile(build_code(Family::surface, 3));
  EXPECT_TRUE(p.g_m_tie);
  EXPECT_EQ(p.g_m, CheckType::Z);
  EXPECT_EQ(p.gammas_of(CheckType::Z), (std::vector<int>{3, 3, 3, 3, 4, 4}));
}

TEST(Layout, SerializedFilesMatchBuilder) {
  const std::pair<const char*, StabilizerCode> cases[] = {
      {"steane.txt", build_code(Family::steane, 3)},
      {"surface13.txt", build_code(Family::surface, 3)},
      {"rotated9.txt", build_code(Family::rotated_surface, 3)},
      {"surface41.txt", build_code(Family::surface, 5)},
      {"rotated25.txt", build_code(Family::rotated_surface, 5)},
  };
  for (const auto& [file, code] : cases) {
    std::string path = std::string(FTQEC_DATA_DIR) + "/layouts/" + file;
    EXPECT_EQ(read_file(path), serialize_layout(code)) << path;
  }
}

TEST(Layout, ParseRoundTrip) {
  auto c = build_code(Family::surface, 3);
  std::istringstream in(serialize_layout(c));
  auto back = parse_layout(in);
  EXPECT_EQ(back.n, c.n);
  EXPECT_EQ(back.k, c.k);
  EXPECT_EQ(back.match_priority, c.match_priority);
  ASSERT_EQ(back.generators.size(), c.generators.size());
  for (std::size_t i = 0; i < c.generators.size(); ++i) EXPECT_EQ(back.generator(i), c.generator(i));
  EXPECT_EQ(serialize_layout(back), serialize_layout(c));
}

TEST(Layout, RejectsBadInput) {
  std::istringstream bad_index("n 3 k 1 d 1\nX 0 5\n");
  EXPECT_THROW(parse_layout(bad_index), std::invalid_argument);
  std::istringstream bad_tag("n 3 k 1 d 1\nQ 0 1\n");
  EXPECT_THROW(parse_layout(bad_tag), std::invalid_argument);
  std::istringstream dependent("n 3 k 1 d 1\nZ 0 1\nZ 1 2\nZ 0 2\n");
  EXPECT_THROW(parse_layout(dependent), std::logic_error);
}
