#pragma once

#include "operadlab/rational.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace operadlab {

/*
 * Incremental row echelon form over the integers.
 *
 * Rows are sparse, sorted by key, and kept primitive (content 1, positive
 * leading coefficient). A new row is reduced against the stored pivot rows
 * by fraction-free elimination of its leading term only; if anything is
 * left it becomes the pivot for its leading key. Rank over Z equals rank
 * over Q, so this decides rational rank and span membership without ever
 * forming fractions.
 */
template <class Key, class Compare = std::less<Key>>
class SparseEchelon {
public:
    using Row = std::vector<std::pair<Key, BigInt>>;

    explicit SparseEchelon(Compare cmp = Compare()) : cmp_(cmp), pivots_(cmp) {}

    /// Returns true when the row was independent of the current span.
    bool insert(Row row)
    {
        reduce(row);
        if (row.empty()) return false;
        Key lead = row.front().first;
        pivots_.emplace(std::move(lead), std::move(row));
        return true;
    }

    bool contains(Row row) const
    {
        reduce(row);
        return row.empty();
    }

    std::size_t rank() const { return pivots_.size(); }

    const std::map<Key, Row, Compare>& pivots() const { return pivots_; }

    /// Sorts by key and drops zeros; helper for callers assembling rows.
    Row normalize_row(Row row) const
    {
        std::sort(row.begin(), row.end(), [this](const auto& a, const auto& b) { return cmp_(a.first, b.first); });
        Row merged;
        for (auto& [k, v] : row) {
            if (!merged.empty() && !cmp_(merged.back().first, k) && !cmp_(k, merged.back().first))
                merged.back().second += v;
            else
                merged.emplace_back(std::move(k), std::move(v));
        }
        std::erase_if(merged, [](const auto& kv) { return kv.second == 0; });
        return merged;
    }

private:
    static void make_primitive(Row& row)
    {
        if (row.empty()) return;
        BigInt g = 0;
        for (const auto& kv : row) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), kv.second.get_mpz_t());
            if (g == 1) break;
        }
        if (sgn(row.front().second) < 0) g = -g;
        if (g != 1)
            for (auto& kv : row) mpz_divexact(kv.second.get_mpz_t(), kv.second.get_mpz_t(), g.get_mpz_t());
    }

    // row <- a*row - b*pivot, where a = lead(pivot)/g, b = lead(row)/g.
    Row combine(const Row& row, const Row& pivot) const
    {
        BigInt g;
        mpz_gcd(g.get_mpz_t(), row.front().second.get_mpz_t(), pivot.front().second.get_mpz_t());
        BigInt a = pivot.front().second / g;
        BigInt b = row.front().second / g;
        Row out;
        out.reserve(row.size() + pivot.size());
        std::size_t i = 1, j = 1;
        BigInt tmp;
        while (i < row.size() || j < pivot.size()) {
            if (j >= pivot.size() || (i < row.size() && cmp_(row[i].first, pivot[j].first))) {
                out.emplace_back(row[i].first, a * row[i].second);
                ++i;
            } else if (i >= row.size() || cmp_(pivot[j].first, row[i].first)) {
                out.emplace_back(pivot[j].first, -b * pivot[j].second);
                ++j;
            } else {
                tmp = a * row[i].second - b * pivot[j].second;
                if (tmp != 0) out.emplace_back(row[i].first, tmp);
                ++i;
                ++j;
            }
        }
        return out;
    }

    void reduce(Row& row) const
    {
        make_primitive(row);
        while (!row.empty()) {
            auto it = pivots_.find(row.front().first);
            if (it == pivots_.end()) return;
            row = combine(row, it->second);
            make_primitive(row);
        }
    }

    Compare cmp_;
    std::map<Key, Row, Compare> pivots_;
};

/// Clears denominators of a rational sparse row (sorted input stays sorted).
template <class Key>
std::vector<std::pair<Key, BigInt>> integer_row(const std::vector<std::pair<Key, Rat>>& row)
{
    BigInt l = 1;
    for (const auto& kv : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), kv.second.get_den_mpz_t());
    std::vector<std::pair<Key, BigInt>> out;
    out.reserve(row.size());
    for (const auto& [k, v] : row) {
        if (sgn(v) == 0) continue;
        out.emplace_back(k, v.get_num() * (l / v.get_den()));
    }
    return out;
}

template <class Key, class Compare>
std::vector<std::pair<Key, BigInt>> integer_row(const std::map<Key, Rat, Compare>& row)
{
    return integer_row(std::vector<std::pair<Key, Rat>>(row.begin(), row.end()));
}

enum class PivotStrategy {
    first_nonzero, ///< rows enter elimination in their stored order
    sparsest_first ///< rows enter ordered by nonzero count (ties by index)
};

/// Sparse matrix over Q. Entries are kept in an ordered map so iteration,
/// serialization and elimination order are deterministic.
class RatMatrix {
public:
    using Index = std::pair<std::size_t, std::size_t>;

    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    static RatMatrix identity(std::size_t n)
    {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    static RatMatrix from_dense(const std::vector<std::vector<Rat>>& rows)
    {
        std::size_t cols = rows.empty() ? 0 : rows.front().size();
        RatMatrix m(rows.size(), cols);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != cols) throw std::invalid_argument("ragged dense matrix");
            for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool is_zero() const { return entries_.empty(); }
    const std::map<Index, Rat>& entries() const { return entries_; }

    Rat at(std::size_t r, std::size_t c) const
    {
        check(r, c);
        auto it = entries_.find({r, c});
        return it == entries_.end() ? Rat(0) : it->second;
    }

    void set(std::size_t r, std::size_t c, const Rat& v)
    {
        check(r, c);
        if (sgn(v) == 0)
            entries_.erase({r, c});
        else
            entries_[{r, c}] = v;
    }

    void add(std::size_t r, std::size_t c, const Rat& v)
    {
        check(r, c);
        auto [it, fresh] = entries_.try_emplace({r, c}, v);
        if (!fresh) it->second += v;
        if (sgn(it->second) == 0) entries_.erase(it);
    }

    RatMatrix transpose() const
    {
        RatMatrix t(cols_, rows_);
        for (const auto& [rc, v] : entries_) t.entries_.emplace(Index{rc.second, rc.first}, v);
        return t;
    }

    RatMatrix select_rows(const std::vector<std::size_t>& which) const
    {
        RatMatrix out(which.size(), cols_);
        for (std::size_t i = 0; i < which.size(); ++i)
            for (std::size_t c = 0; c < cols_; ++c) out.set(i, c, at(which[i], c));
        return out;
    }

    std::vector<std::vector<std::pair<std::size_t, Rat>>> row_lists() const
    {
        std::vector<std::vector<std::pair<std::size_t, Rat>>> out(rows_);
        for (const auto& [rc, v] : entries_) out[rc.first].emplace_back(rc.second, v);
        return out;
    }

    std::vector<std::vector<Rat>> dense() const
    {
        std::vector<std::vector<Rat>> d(rows_, std::vector<Rat>(cols_, Rat(0)));
        for (const auto& [rc, v] : entries_) d[rc.first][rc.second] = v;
        return d;
    }

    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b)
    {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
        auto brows = b.row_lists();
        std::map<Index, Rat> acc;
        for (const auto& [rc, v] : a.entries_)
            for (const auto& [c, w] : brows[rc.second]) acc[{rc.first, c}] += v * w;
        RatMatrix out(a.rows_, b.cols_);
        for (auto& [rc, v] : acc)
            if (sgn(v) != 0) out.entries_.emplace(rc, std::move(v));
        return out;
    }

    friend bool operator==(const RatMatrix& a, const RatMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

private:
    void check(std::size_t r, std::size_t c) const
    {
        if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::map<Index, Rat> entries_;
};

inline std::size_t rank(const RatMatrix& m, PivotStrategy strategy = PivotStrategy::first_nonzero)
{
    auto rows = m.row_lists();
    std::vector<std::size_t> order(rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    if (strategy == PivotStrategy::sparsest_first)
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return rows[a].size() < rows[b].size(); });
    SparseEchelon<std::size_t> ech;
    for (std::size_t r : order) {
        if (rows[r].empty()) continue;
        ech.insert(integer_row(rows[r]));
        if (ech.rank() == m.cols()) break;
    }
    return ech.rank();
}

/// Fraction-free (Bareiss) determinant; pivot = first nonzero in the column.
inline Rat det(const RatMatrix& m)
{
    if (!m.is_square()) throw std::invalid_argument("det: matrix is not square");
    const std::size_t n = m.rows();
    if (n == 0) return Rat(1);
    // Scale rows to integers so every Bareiss division is exact in Z.
    Rat scale = 1;
    std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n, 0));
    auto dense = m.dense();
    for (std::size_t r = 0; r < n; ++r) {
        BigInt l = 1;
        for (const auto& v : dense[r]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
        scale *= Rat(l);
        for (std::size_t c = 0; c < n; ++c) a[r][c] = dense[r][c].get_num() * (l / dense[r][c].get_den());
    }
    int sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][k] == 0) ++p;
        if (p == n) return Rat(0);
        if (p != k) {
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    Rat d(a[n - 1][n - 1] * sign);
    return d / scale;
}

/// Dimension of the rational span of sparse vectors over a shared key set.
template <class Key>
std::size_t span_dim(const std::vector<std::map<Key, Rat>>& vectors)
{
    SparseEchelon<Key> ech;
    for (const auto& v : vectors) ech.insert(integer_row(v));
    return ech.rank();
}

inline std::size_t span_dim(const std::vector<std::vector<Rat>>& vectors)
{
    std::vector<std::map<std::size_t, Rat>> sparse;
    for (const auto& v : vectors) {
        std::map<std::size_t, Rat> s;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (sgn(v[i]) != 0) s.emplace(i, v[i]);
        sparse.push_back(std::move(s));
    }
    return span_dim(sparse);
}

inline nlohmann::json to_json(const RatMatrix& m)
{
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [rc, v] : m.entries())
        entries.push_back({rc.first, rc.second, format_rat_fraction(v)});
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

inline RatMatrix matrix_from_json(const nlohmann::json& j)
{
    RatMatrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    for (const auto& e : j.at("entries"))
        m.set(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(), parse_rat(e.at(2).get<std::string>()));
    return m;
}

/// One line per row, entries separated by single spaces.
inline std::string to_text(const RatMatrix& m)
{
    std::ostringstream os;
    auto d = m.dense();
    for (const auto& row : d) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? " " : "") << row[c].get_str();
        os << '\n';
    }
    return os.str();
}

} // namespace operadlab
