#include <gtest/gtest.h>

#include "ftqec/gf2.hpp"
#include "ftqec/pauli.hpp"

using namespace ftqec;

TEST(Pauli, ProductAndWeight) {
  auto a = from_string("XZIY");
  auto b = from_string("XXZI");
  EXPECT_EQ(to_string(a * b, 4), "IYZY");
  EXPECT_EQ(a.weight(), 3u);
  EXPECT_TRUE((a * a).is_identity());
}

TEST(Pauli, StringRoundTrip) {
  for (const char* s : {"IXYZ", "YYYYYYY", "IIIIIIIIIIIIX"}) {
    auto p = from_string(s);
    EXPECT_EQ(to_string(p, std::string(s).size()), s);
  }
}

TEST(Pauli, Commutation) {
  EXPECT_TRUE(commutes(from_string("XX"), from_string("ZZ")));
  EXPECT_FALSE(commutes(from_string("XI"), from_string("ZI")));
  EXPECT_FALSE(commutes(from_string("Y"), from_string("X")));
  EXPECT_TRUE(commutes(from_string("XXXX"), from_string("ZZII")));
}

TEST(Pauli, LexOrderIsStrictWeak) {
  auto a = from_string("XII"), b = from_string("IXI"), c = from_string("ZII");
  EXPECT_TRUE(lex_less(b, a) != lex_less(a, b));
  EXPECT_FALSE(lex_less(a, a));
  EXPECT_TRUE(lex_less(a, c) || lex_less(c, a));
}

TEST(Gf2, BasisInsertAndContains) {
  Gf2Basis<8> basis;
  EXPECT_TRUE(basis.insert(std::bitset<8>("00000011")));
  EXPECT_TRUE(basis.insert(std::bitset<8>("00000110")));
  EXPECT_FALSE(basis.insert(std::bitset<8>("00000101")));
  EXPECT_TRUE(basis.contains(std::bitset<8>("00000101")));
  EXPECT_FALSE(basis.contains(std::bitset<8>("00001000")));
  EXPECT_EQ(basis.rank(), 2u);
}

TEST(Gf2, KernelOfHammingChecks) {
  std::vector<Bits> rows(3);
  for (int q : {3, 4, 5, 6}) rows[0].set(q);
  for (int q : {1, 2, 5, 6}) rows[1].set(q);
  for (int q : {0, 2, 4, 6}) rows[2].set(q);
  auto ker = kernel(rows, 7);
  EXPECT_EQ(ker.size(), 4u);
  for (const auto& v : ker)
    for (const auto& r : rows) EXPECT_EQ((v & r).count() % 2, 0u);
}
