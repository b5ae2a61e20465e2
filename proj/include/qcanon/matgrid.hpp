#pragma once

// Nonnegative integer matrices, cells of fixed margins, the 2x2 sub-matrix
// moves generating the order on a cell, and the move graph H(A).

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace qcanon {

/// A rows x cols matrix with nonnegative entries, addressed 1-based.
class MatIdx {
public:
    MatIdx() = default;
    MatIdx(int rows, int cols);
    /// From row vectors; all rows must have equal length.
    MatIdx(std::initializer_list<std::initializer_list<int>> rows);
    explicit MatIdx(const std::vector<std::vector<int>>& rows);

    /// "r11,r12;r21,r22" (rows separated by ';', entries by ',').
    static MatIdx parse(std::string_view literal);
    static MatIdx zero(int n) { return MatIdx(n, n); }
    static MatIdx identity(int n);
    /// E_ij in a rows x cols grid.
    static MatIdx unit(int rows, int cols, int i, int j);
    /// The 2x2 matrix E = E_12 + E_21.
    static MatIdx anti2();

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int operator()(int i, int j) const { return data_[(i - 1) * cols_ + (j - 1)]; }
    void set(int i, int j, int value);
    const std::vector<int>& entries() const { return data_; }

    std::vector<int> row_sums() const;
    std::vector<int> col_sums() const;
    int mass() const;
    /// sum over i<s, j<t of a_ij * a_st; strictly decreases along downward moves.
    long rho() const;
    bool same_shape(const MatIdx& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

    MatIdx& operator+=(const MatIdx& o);
    friend MatIdx operator+(MatIdx a, const MatIdx& b) { return a += b; }
    /// Componentwise difference; throws if an entry would become negative.
    friend MatIdx operator-(const MatIdx& a, const MatIdx& b);

    auto operator<=>(const MatIdx&) const = default;

    /// "2,0;0,1"
    std::string to_string() const;
    std::string to_latex() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<int> data_;
};

/// Positions (i,j) upper-left and (s,t) lower-right with i < s, j < t.
struct MoveLabel {
    int i = 0;
    int j = 0;
    int s = 0;
    int t = 0;
    auto operator<=>(const MoveLabel&) const = default;
    /// "(i,j)/(s,t)"
    std::string to_string() const;
};

enum class MoveDirection { Down, Up };

/// All labels of a rows x cols grid in (i,j,s,t) lexicographic order.
std::vector<MoveLabel> all_labels(int rows, int cols);

/// Downward: a_ij, a_st -= 1 and a_it, a_sj += 1. Throws IllegalMove.
MatIdx apply_move(const MatIdx& a, const MoveLabel& m, MoveDirection dir = MoveDirection::Down);
bool can_move_down(const MatIdx& a, const MoveLabel& m);

struct MoveEdge {
    MatIdx from;
    MoveLabel label;
    MatIdx to;
};

struct Cell {
    std::vector<int> rowSums;
    std::vector<int> colSums;
    std::vector<MatIdx> members;  // sorted
    std::vector<MoveEdge> moveEdges;

    bool contains(const MatIdx& a) const;
};

/// All nonnegative matrices with the given margins and all single-move edges.
Cell enumerate_cell(const std::vector<int>& rowSums, const std::vector<int>& colSums);
/// The cell containing a.
Cell cell_of(const MatIdx& a);
/// Every cell of rows x cols matrices with total mass <= maxMass, by mass then margins.
std::vector<Cell> cells_up_to_mass(int rows, int cols, int maxMass);

/// True iff b is reachable from a by downward moves (reflexive).
bool less_equal(const MatIdx& b, const MatIdx& a);

struct HasseGraph {
    MatIdx top;
    std::vector<MatIdx> nodes;  // sorted
    std::vector<MoveEdge> edges;
    MatIdx tail;
    std::map<MatIdx, int> level;  // longest-path depth from top
};

/// The down-set of a with its single-move edges, the unique minimal node and levels.
HasseGraph hasse_graph(const MatIdx& a);

/// How the lexicographic maximality among longest paths is resolved.
enum class PathOrder {
    LexMax,  // maximal label sequence, labels compared as (i,j,s,t)
    LexMin,  // minimal label sequence
};

struct PathRecord {
    MatIdx from;
    MatIdx to;
    std::vector<MoveLabel> labels;
};

struct PrincipalPath {
    PathRecord path;
    int length = 0;
    std::map<MoveLabel, int> multiplicities;
};

/// A longest a -> b path, extremal in the chosen label order. Throws NotComparable.
PrincipalPath principal_path(const MatIdx& a, const MatIdx& b, PathOrder order = PathOrder::LexMax);

/// Graphviz rendering of H(a), edges labelled "(i,j)/(s,t)".
std::string to_dot(const HasseGraph& g);

}  // namespace qcanon
