#include <set>

#include <gtest/gtest.h>

#include "printers.hpp"

#include "qcanon/errors.hpp"
#include "qcanon/matgrid.hpp"

using namespace qcanon;

namespace {

const MatIdx I2 = MatIdx::identity(2);
const MatIdx E2 = MatIdx::anti2();
const MoveLabel L1122{1, 1, 2, 2};

// Brute force: every matrix with entries bounded by the total, filtered by margins.
std::set<MatIdx> brute_cell(const std::vector<int>& r, const std::vector<int>& c) {
    const int rows = static_cast<int>(r.size()), cols = static_cast<int>(c.size());
    int total = 0;
    for (int x : r) total += x;
    std::set<MatIdx> out;
    std::vector<int> e(rows * cols, 0);
    while (true) {
        MatIdx m(rows, cols);
        for (int k = 0; k < rows * cols; ++k) m.set(k / cols + 1, k % cols + 1, e[k]);
        if (m.row_sums() == r && m.col_sums() == c) out.insert(m);
        int k = 0;
        while (k < rows * cols && e[k] == total) e[k++] = 0;
        if (k == rows * cols) break;
        ++e[k];
    }
    return out;
}

std::vector<std::vector<int>> compositions(int total, int parts) {
    if (parts == 1) return {{total}};
    std::vector<std::vector<int>> out;
    for (int x = 0; x <= total; ++x)
        for (auto rest : compositions(total - x, parts - 1)) {
            rest.insert(rest.begin(), x);
            out.push_back(rest);
        }
    return out;
}

}  // namespace

TEST(MatGrid, ParseAndPrint) {
    MatIdx a = MatIdx::parse("2,0;0,1");
    EXPECT_EQ(a(1, 1), 2);
    EXPECT_EQ(a(2, 2), 1);
    EXPECT_EQ(a.to_string(), "2,0;0,1");
    EXPECT_THROW(MatIdx::parse("1,2;3"), ParseError);
}

TEST(MatGrid, EnumerateCell) {
    Cell c = enumerate_cell({1, 1}, {1, 1});
    ASSERT_EQ(c.members.size(), 2u);
    ASSERT_EQ(c.moveEdges.size(), 1u);
    EXPECT_EQ(c.moveEdges[0].from, I2);
    EXPECT_EQ(c.moveEdges[0].to, E2);
    EXPECT_EQ(c.moveEdges[0].label, L1122);

    Cell d = enumerate_cell({2, 1}, {2, 1});
    EXPECT_EQ(std::set<MatIdx>(d.members.begin(), d.members.end()),
              (std::set<MatIdx>{MatIdx::parse("2,0;0,1"), MatIdx::parse("1,1;1,0")}));
    EXPECT_EQ(enumerate_cell({1, 1, 1}, {1, 1, 1}).members.size(), 6u);
    EXPECT_THROW(enumerate_cell({1, 1}, {1}), MarginMismatch);
}

TEST(MatGrid, EnumerateCellMatchesBruteForce) {
    for (int total = 0; total <= 4; ++total)
        for (const auto& r : compositions(total, 3))
            for (const auto& c : compositions(total, 2)) {
                Cell cell = enumerate_cell(r, c);
                EXPECT_EQ(std::set<MatIdx>(cell.members.begin(), cell.members.end()), brute_cell(r, c));
            }
}

TEST(MatGrid, ApplyMove) {
    EXPECT_EQ(apply_move(I2, L1122), E2);
    EXPECT_EQ(apply_move(MatIdx::parse("2,0;0,1"), L1122), MatIdx::parse("1,1;1,0"));
    EXPECT_THROW(apply_move(E2, L1122), IllegalMove);
    EXPECT_EQ(apply_move(E2, L1122, MoveDirection::Up), I2);
    EXPECT_THROW(apply_move(I2, L1122, MoveDirection::Up), IllegalMove);
}

TEST(MatGrid, LessEqual) {
    EXPECT_TRUE(less_equal(E2, I2));
    EXPECT_FALSE(less_equal(I2, E2));
    EXPECT_TRUE(less_equal(I2, I2));
}

TEST(MatGrid, HasseGraph) {
    HasseGraph g = hasse_graph(MatIdx::parse("2,0;0,1"));
    EXPECT_EQ(g.nodes.size(), 2u);
    EXPECT_EQ(g.edges.size(), 1u);
    EXPECT_EQ(g.tail, MatIdx::parse("1,1;1,0"));
    HasseGraph h = hasse_graph(E2);
    EXPECT_EQ(h.nodes.size(), 1u);
    EXPECT_TRUE(h.edges.empty());
    EXPECT_EQ(h.tail, E2);
    EXPECT_EQ(hasse_graph(I2).tail, E2);
}

TEST(MatGrid, PrincipalPath) {
    PrincipalPath p = principal_path(MatIdx::parse("2,0;0,1"), MatIdx::parse("1,1;1,0"));
    EXPECT_EQ(p.length, 1);
    EXPECT_EQ(p.multiplicities, (std::map<MoveLabel, int>{{L1122, 1}}));
    PrincipalPath z = principal_path(I2, I2);
    EXPECT_EQ(z.length, 0);
    EXPECT_TRUE(z.multiplicities.empty());
    EXPECT_EQ(principal_path(I2, E2).length, 1);
    EXPECT_THROW(principal_path(E2, I2), NotComparable);
}

TEST(MatGrid, PrincipalPathReplays) {
    MatIdx a = MatIdx::parse("2,1,0;0,1,1;1,0,1");
    for (const MatIdx& b : hasse_graph(a).nodes)
        for (PathOrder order : {PathOrder::LexMax, PathOrder::LexMin}) {
            PrincipalPath p = principal_path(a, b, order);
            MatIdx cur = a;
            for (const auto& l : p.path.labels) cur = apply_move(cur, l);
            EXPECT_EQ(cur, b);
            EXPECT_EQ(static_cast<int>(p.path.labels.size()), p.length);
        }
}

TEST(MatGridProperty, RhoDecreasesAndMarginsPreserved) {
    for (int n : {2, 3})
        for (int total = 0; total <= (n == 2 ? 8 : 5); ++total)
            for (const auto& r : compositions(total, n))
                for (const auto& c : compositions(total, n)) {
                    Cell cell = enumerate_cell(r, c);
                    for (const auto& e : cell.moveEdges) {
                        EXPECT_LT(e.to.rho(), e.from.rho());
                        EXPECT_EQ(e.to.row_sums(), e.from.row_sums());
                        EXPECT_EQ(e.to.col_sums(), e.from.col_sums());
                    }
                }
}

TEST(MatGridProperty, UniqueTailAndPartialOrder) {
    for (int n : {2, 3})
        for (int total = 0; total <= (n == 2 ? 6 : 4); ++total)
            for (const auto& r : compositions(total, n))
                for (const auto& c : compositions(total, n)) {
                    Cell cell = enumerate_cell(r, c);
                    for (const auto& a : cell.members) {
                        HasseGraph g = hasse_graph(a);
                        int minimal = 0;
                        for (const auto& b : g.nodes) {
                            bool hasDown = false;
                            for (const auto& e : g.edges) hasDown |= e.from == b;
                            minimal += hasDown ? 0 : 1;
                        }
                        EXPECT_EQ(minimal, 1);
                    }
                    if (cell.members.size() > 12) continue;
                    for (const auto& a : cell.members)
                        for (const auto& b : cell.members) {
                            if (a != b && less_equal(a, b)) EXPECT_FALSE(less_equal(b, a));
                            for (const auto& c2 : cell.members)
                                if (less_equal(a, b) && less_equal(b, c2)) EXPECT_TRUE(less_equal(a, c2));
                        }
                }
}
