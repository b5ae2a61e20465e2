#include "qcanon/matgrid.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "qcanon/errors.hpp"

namespace qcanon {

// ---------------------------------------------------------------------------
// MatIdx

MatIdx::MatIdx(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), 0) {
    if (rows < 0 || cols < 0) throw ParseError("negative matrix dimension");
}

MatIdx::MatIdx(std::initializer_list<std::initializer_list<int>> rows) {
    std::vector<std::vector<int>> v;
    for (const auto& r : rows) v.emplace_back(r);
    *this = MatIdx(v);
}

MatIdx::MatIdx(const std::vector<std::vector<int>>& rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows.empty() ? 0 : static_cast<int>(rows.front().size());
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != cols_) throw ParseError("ragged matrix rows");
        for (int x : r) {
            if (x < 0) throw ParseError("negative matrix entry");
            data_.push_back(x);
        }
    }
}

MatIdx MatIdx::parse(std::string_view literal) {
    std::vector<std::vector<int>> rows;
    std::size_t start = 0;
    while (start <= literal.size()) {
        std::size_t end = literal.find(';', start);
        if (end == std::string_view::npos) end = literal.size();
        std::string_view row = literal.substr(start, end - start);
        std::vector<int> entries;
        std::size_t p = 0;
        while (p <= row.size()) {
            std::size_t e = row.find(',', p);
            if (e == std::string_view::npos) e = row.size();
            std::string tok(row.substr(p, e - p));
            tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
            if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit))
                throw ParseError("bad matrix literal '" + std::string(literal) + "'");
            entries.push_back(std::stoi(tok));
            p = e + 1;
        }
        rows.push_back(std::move(entries));
        start = end + 1;
    }
    return MatIdx(rows);
}

MatIdx MatIdx::identity(int n) {
    MatIdx a(n, n);
    for (int i = 1; i <= n; ++i) a.set(i, i, 1);
    return a;
}

MatIdx MatIdx::unit(int rows, int cols, int i, int j) {
    MatIdx a(rows, cols);
    a.set(i, j, 1);
    return a;
}

MatIdx MatIdx::anti2() { return MatIdx{{0, 1}, {1, 0}}; }

void MatIdx::set(int i, int j, int value) {
    if (i < 1 || i > rows_ || j < 1 || j > cols_) throw IndexOutOfRange("matrix position out of range");
    if (value < 0) throw IllegalMove("negative matrix entry");
    data_[(i - 1) * cols_ + (j - 1)] = value;
}

std::vector<int> MatIdx::row_sums() const {
    std::vector<int> r(rows_, 0);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r[i] += data_[i * cols_ + j];
    return r;
}

std::vector<int> MatIdx::col_sums() const {
    std::vector<int> c(cols_, 0);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) c[j] += data_[i * cols_ + j];
    return c;
}

int MatIdx::mass() const { return std::accumulate(data_.begin(), data_.end(), 0); }

long MatIdx::rho() const {
    long r = 0;
    for (int i = 1; i <= rows_; ++i)
        for (int j = 1; j <= cols_; ++j) {
            int a = (*this)(i, j);
            if (a == 0) continue;
            for (int s = i + 1; s <= rows_; ++s)
                for (int t = j + 1; t <= cols_; ++t) r += static_cast<long>(a) * (*this)(s, t);
        }
    return r;
}

MatIdx& MatIdx::operator+=(const MatIdx& o) {
    if (!same_shape(o)) throw IndexOutOfRange("matrix shapes differ");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
}

MatIdx operator-(const MatIdx& a, const MatIdx& b) {
    if (!a.same_shape(b)) throw IndexOutOfRange("matrix shapes differ");
    MatIdx r = a;
    for (std::size_t k = 0; k < r.data_.size(); ++k) {
        r.data_[k] -= b.data_[k];
        if (r.data_[k] < 0) throw IllegalMove("negative entry in matrix difference");
    }
    return r;
}

std::string MatIdx::to_string() const {
    std::string out;
    for (int i = 1; i <= rows_; ++i) {
        if (i > 1) out += ';';
        for (int j = 1; j <= cols_; ++j) {
            if (j > 1) out += ',';
            out += std::to_string((*this)(i, j));
        }
    }
    return out;
}

std::string MatIdx::to_latex() const {
    std::string out = "\\begin{pmatrix}";
    for (int i = 1; i <= rows_; ++i) {
        if (i > 1) out += "\\\\";
        for (int j = 1; j <= cols_; ++j) {
            if (j > 1) out += '&';
            out += std::to_string((*this)(i, j));
        }
    }
    return out + "\\end{pmatrix}";
}

// ---------------------------------------------------------------------------
// Moves

std::string MoveLabel::to_string() const {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")/(" + std::to_string(s) + "," + std::to_string(t) +
           ")";
}

std::vector<MoveLabel> all_labels(int rows, int cols) {
    std::vector<MoveLabel> out;
    for (int i = 1; i <= rows; ++i)
        for (int j = 1; j <= cols; ++j)
            for (int s = i + 1; s <= rows; ++s)
                for (int t = j + 1; t <= cols; ++t) out.push_back({i, j, s, t});
    return out;
}

namespace {

void check_label(const MatIdx& a, const MoveLabel& m) {
    if (!(m.i >= 1 && m.j >= 1 && m.i < m.s && m.j < m.t && m.s <= a.rows() && m.t <= a.cols()))
        throw IllegalMove("label " + m.to_string() + " invalid for a " + std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()) + " matrix");
}

}  // namespace

bool can_move_down(const MatIdx& a, const MoveLabel& m) { return a(m.i, m.j) >= 1 && a(m.s, m.t) >= 1; }

MatIdx apply_move(const MatIdx& a, const MoveLabel& m, MoveDirection dir) {
    check_label(a, m);
    const int d = dir == MoveDirection::Down ? 1 : -1;
    if (dir == MoveDirection::Down ? !can_move_down(a, m) : (a(m.i, m.t) < 1 || a(m.s, m.j) < 1))
        throw IllegalMove("move " + m.to_string() + " not applicable to " + a.to_string());
    MatIdx b = a;
    b.set(m.i, m.j, a(m.i, m.j) - d);
    b.set(m.s, m.t, a(m.s, m.t) - d);
    b.set(m.i, m.t, a(m.i, m.t) + d);
    b.set(m.s, m.j, a(m.s, m.j) + d);
    return b;
}

// ---------------------------------------------------------------------------
// Cells

bool Cell::contains(const MatIdx& a) const { return std::binary_search(members.begin(), members.end(), a); }

namespace {

void fill_rows(int row, MatIdx& cur, std::vector<int>& capacity, const std::vector<int>& rowSums,
               std::vector<MatIdx>& out) {
    const int rows = cur.rows();
    const int cols = cur.cols();
    if (row > rows) {
        if (std::all_of(capacity.begin(), capacity.end(), [](int c) { return c == 0; })) out.push_back(cur);
        return;
    }
    // distribute rowSums[row-1] over the columns, bounded by remaining capacity
    auto place = [&](auto&& self, int col, int remaining) -> void {
        if (col == cols) {
            if (remaining <= capacity[col - 1]) {
                cur.set(row, col, remaining);
                capacity[col - 1] -= remaining;
                fill_rows(row + 1, cur, capacity, rowSums, out);
                capacity[col - 1] += remaining;
                cur.set(row, col, 0);
            }
            return;
        }
        int rest_capacity = 0;
        for (int c = col + 1; c <= cols; ++c) rest_capacity += capacity[c - 1];
        for (int x = std::max(0, remaining - rest_capacity); x <= std::min(remaining, capacity[col - 1]); ++x) {
            cur.set(row, col, x);
            capacity[col - 1] -= x;
            self(self, col + 1, remaining - x);
            capacity[col - 1] += x;
        }
        cur.set(row, col, 0);
    };
    if (cols == 0) {
        if (rowSums[row - 1] == 0) fill_rows(row + 1, cur, capacity, rowSums, out);
        return;
    }
    place(place, 1, rowSums[row - 1]);
}

}  // namespace

Cell enumerate_cell(const std::vector<int>& rowSums, const std::vector<int>& colSums) {
    if (std::accumulate(rowSums.begin(), rowSums.end(), 0) != std::accumulate(colSums.begin(), colSums.end(), 0))
        throw MarginMismatch("row and column totals differ");
    if (std::any_of(rowSums.begin(), rowSums.end(), [](int x) { return x < 0; }) ||
        std::any_of(colSums.begin(), colSums.end(), [](int x) { return x < 0; }))
        throw MarginMismatch("negative margin");
    Cell cell;
    cell.rowSums = rowSums;
    cell.colSums = colSums;
    MatIdx cur(static_cast<int>(rowSums.size()), static_cast<int>(colSums.size()));
    std::vector<int> capacity = colSums;
    fill_rows(1, cur, capacity, rowSums, cell.members);
    std::sort(cell.members.begin(), cell.members.end());
    const auto labels = all_labels(cur.rows(), cur.cols());
    for (const auto& a : cell.members)
        for (const auto& m : labels)
            if (can_move_down(a, m)) cell.moveEdges.push_back({a, m, apply_move(a, m)});
    return cell;
}

Cell cell_of(const MatIdx& a) { return enumerate_cell(a.row_sums(), a.col_sums()); }

namespace {

std::vector<std::vector<int>> compositions(int total, int parts) {
    if (parts == 1) return {{total}};
    std::vector<std::vector<int>> out;
    for (int x = total; x >= 0; --x)
        for (auto rest : compositions(total - x, parts - 1)) {
            rest.insert(rest.begin(), x);
            out.push_back(std::move(rest));
        }
    return out;
}

}  // namespace

std::vector<Cell> cells_up_to_mass(int rows, int cols, int maxMass) {
    std::vector<Cell> out;
    for (int m = 0; m <= maxMass; ++m)
        for (const auto& r : compositions(m, rows))
            for (const auto& c : compositions(m, cols)) out.push_back(enumerate_cell(r, c));
    return out;
}

bool less_equal(const MatIdx& b, const MatIdx& a) {
    if (!a.same_shape(b)) return false;
    if (a == b) return true;
    if (a.row_sums() != b.row_sums() || a.col_sums() != b.col_sums()) return false;
    const long target = b.rho();
    const auto labels = all_labels(a.rows(), a.cols());
    std::set<MatIdx> seen{a};
    std::deque<MatIdx> queue{a};
    while (!queue.empty()) {
        MatIdx x = std::move(queue.front());
        queue.pop_front();
        for (const auto& m : labels) {
            if (!can_move_down(x, m)) continue;
            MatIdx y = apply_move(x, m);
            if (y == b) return true;
            if (y.rho() <= target) continue;
            if (seen.insert(y).second) queue.push_back(std::move(y));
        }
    }
    return false;
}

HasseGraph hasse_graph(const MatIdx& a) {
    HasseGraph g;
    g.top = a;
    const auto labels = all_labels(a.rows(), a.cols());
    std::set<MatIdx> seen{a};
    std::deque<MatIdx> queue{a};
    while (!queue.empty()) {
        MatIdx x = std::move(queue.front());
        queue.pop_front();
        for (const auto& m : labels) {
            if (!can_move_down(x, m)) continue;
            MatIdx y = apply_move(x, m);
            g.edges.push_back({x, m, y});
            if (seen.insert(y).second) queue.push_back(std::move(y));
        }
    }
    g.nodes.assign(seen.begin(), seen.end());
    std::sort(g.edges.begin(), g.edges.end(), [](const MoveEdge& e, const MoveEdge& f) {
        return std::tie(e.from, e.label) < std::tie(f.from, f.label);
    });

    // Longest-path depth: process nodes by decreasing rho (a topological order).
    std::vector<MatIdx> order = g.nodes;
    std::sort(order.begin(), order.end(), [](const MatIdx& x, const MatIdx& y) {
        return x.rho() != y.rho() ? x.rho() > y.rho() : x < y;
    });
    std::map<MatIdx, std::vector<const MoveEdge*>> out;
    for (const auto& e : g.edges) out[e.from].push_back(&e);
    for (const auto& x : g.nodes) g.level[x] = 0;
    for (const auto& x : order)
        for (const auto* e : out[x]) g.level[e->to] = std::max(g.level[e->to], g.level[x] + 1);

    std::vector<MatIdx> minimal;
    for (const auto& x : g.nodes)
        if (out[x].empty()) minimal.push_back(x);
    if (minimal.size() != 1) throw Error("H(A) does not have a unique minimal node");
    g.tail = minimal.front();
    return g;
}

PrincipalPath principal_path(const MatIdx& a, const MatIdx& b, PathOrder order) {
    if (!less_equal(b, a)) throw NotComparable(b.to_string() + " is not below " + a.to_string());
    const auto labels = all_labels(a.rows(), a.cols());
    const long target = b.rho();

    // longest[x] = length of the longest x -> b path, -1 if b unreachable from x
    std::map<MatIdx, int> longest;
    auto solve = [&](auto&& self, const MatIdx& x) -> int {
        if (x == b) return 0;
        if (auto it = longest.find(x); it != longest.end()) return it->second;
        int best = -1;
        if (x.rho() > target) {
            for (const auto& m : labels) {
                if (!can_move_down(x, m)) continue;
                int sub = self(self, apply_move(x, m));
                if (sub >= 0) best = std::max(best, sub + 1);
            }
        }
        longest[x] = best;
        return best;
    };

    PrincipalPath result;
    result.path.from = a;
    result.path.to = b;
    result.length = solve(solve, a);
    MatIdx cur = a;
    int remaining = result.length;
    while (remaining > 0) {
        std::vector<MoveLabel> candidates;
        for (const auto& m : labels) {
            if (!can_move_down(cur, m)) continue;
            MatIdx y = apply_move(cur, m);
            if (solve(solve, y) == remaining - 1) candidates.push_back(m);
        }
        const MoveLabel pick = order == PathOrder::LexMax ? *std::max_element(candidates.begin(), candidates.end())
                                                          : *std::min_element(candidates.begin(), candidates.end());
        result.path.labels.push_back(pick);
        ++result.multiplicities[pick];
        cur = apply_move(cur, pick);
        --remaining;
    }
    return result;
}

std::string to_dot(const HasseGraph& g) {
    std::ostringstream os;
    os << "digraph H {\n";
    std::map<int, std::vector<MatIdx>> by_level;
    for (const auto& x : g.nodes) by_level[g.level.at(x)].push_back(x);
    for (const auto& [lvl, xs] : by_level) {
        os << "  { rank=same;";
        for (const auto& x : xs) os << " \"" << x.to_string() << "\";";
        os << " }\n";
    }
    os << "  \"" << g.top.to_string() << "\" [shape=box];\n";
    os << "  \"" << g.tail.to_string() << "\" [shape=doublecircle];\n";
    for (const auto& e : g.edges)
        os << "  \"" << e.from.to_string() << "\" -> \"" << e.to.to_string() << "\" [label=\"" << e.label.to_string()
           << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace qcanon
