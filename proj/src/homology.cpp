#include "symjoin/homology.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace symjoin {

namespace {

// row-major sparse integer matrix with a column occupancy index, the working
// representation for the eliminations below
struct Work {
    int rows = 0, cols = 0;
    std::vector<std::map<int, bigint>> row;  // row -> (col -> value)
    std::vector<std::set<int>> colrows;      // col -> rows with a nonzero

    explicit Work(const SparseMat& a) : rows(a.rows), cols(a.cols), row(a.rows), colrows(a.cols) {
        for (int c = 0; c < a.cols; ++c)
            for (auto& [r, v] : a.col[c]) {
                row[r][c] = v;
                colrows[c].insert(r);
            }
    }

    bigint at(int r, int c) const {
        auto it = row[r].find(c);
        return it == row[r].end() ? bigint(0) : it->second;
    }

    void set(int r, int c, const bigint& v) {
        if (v == 0) {
            row[r].erase(c);
            colrows[c].erase(r);
        } else {
            row[r][c] = v;
            colrows[c].insert(r);
        }
    }

    // row r1 += q * row r2
    void row_op(int r1, int r2, const bigint& q) {
        if (q == 0) return;
        for (auto& [c, v] : row[r2]) set(r1, c, at(r1, c) + q * v);
    }

    // col c1 += q * col c2
    void col_op(int c1, int c2, const bigint& q) {
        if (q == 0) return;
        auto rows_of_c2 = colrows[c2]; // copy, set() mutates the index
        for (int r : rows_of_c2) set(r, c1, at(r, c1) + q * at(r, c2));
    }

    void swap_rows(int r1, int r2) {
        if (r1 == r2) return;
        std::swap(row[r1], row[r2]);
        for (auto& s : colrows) {
            bool h1 = s.count(r1), h2 = s.count(r2);
            if (h1 == h2) continue;
            if (h1) {
                s.erase(r1);
                s.insert(r2);
            } else {
                s.erase(r2);
                s.insert(r1);
            }
        }
    }
};

bigint babs(const bigint& v) { return v < 0 ? -v : v; }

// truncated quotient, fine for remainder-shrinking elimination steps
bigint tdiv(const bigint& a, const bigint& b) { return a / b; }

} // namespace

std::vector<bigint> smith_invariants(const SparseMat& a) {
    Work w(a);
    std::vector<bool> row_done(w.rows, false), col_done(w.cols, false);
    std::vector<bigint> diag;

    while (true) {
        // pivot selection: prefer units, then small magnitude, then low fill
        int pr = -1, pc = -1;
        bigint pv = 0;
        long long best_score = -1;
        bool best_unit = false;
        for (int r = 0; r < w.rows; ++r) {
            if (row_done[r]) continue;
            for (auto& [c, v] : w.row[r]) {
                if (col_done[c]) continue;
                bool unit = babs(v) == 1;
                long long score = (long long)(w.row[r].size() - 1) *
                                  (long long)(w.colrows[c].size() - 1);
                bool better;
                if (pr < 0)
                    better = true;
                else if (unit != best_unit)
                    better = unit;
                else if (unit)
                    better = score < best_score;
                else if (babs(v) != babs(pv))
                    better = babs(v) < babs(pv);
                else
                    better = score < best_score;
                if (better) {
                    pr = r;
                    pc = c;
                    pv = v;
                    best_score = score;
                    best_unit = unit;
                }
            }
        }
        if (pr < 0) break;

        // isolate the pivot; each pass either clears its row and column or
        // strictly shrinks |pivot|, so this terminates
        while (true) {
            bool retry = false;
            auto rows_in_col = w.colrows[pc]; // copy
            for (int r : rows_in_col) {
                if (r == pr || row_done[r]) continue;
                bigint v = w.at(r, pc);
                bigint q = tdiv(v, w.at(pr, pc));
                w.row_op(r, pr, -q);
                if (w.at(r, pc) != 0) { // remainder smaller than pivot
                    pr = r;
                    retry = true;
                    break;
                }
            }
            if (retry) continue;
            auto cols_in_row = w.row[pr]; // copy
            bool col_retry = false;
            for (auto& [c, v0] : cols_in_row) {
                if (c == pc || col_done[c]) continue;
                bigint v = w.at(pr, c);
                if (v == 0) continue;
                bigint q = tdiv(v, w.at(pr, pc));
                w.col_op(c, pc, -q);
                if (w.at(pr, c) != 0) {
                    pc = c;
                    col_retry = true;
                    break;
                }
            }
            if (col_retry) continue;
            // column ops cannot have refilled the pivot column here: each one
            // only touched rows where the pivot column entry was already 0
            // after the row pass, plus row pr itself
            bool clean = true;
            for (int r : w.colrows[pc])
                if (r != pr && !row_done[r]) clean = false;
            if (clean) break;
        }
        diag.push_back(babs(w.at(pr, pc)));
        row_done[pr] = true;
        col_done[pc] = true;
        // drop the pivot entry so later scans skip it
        w.set(pr, pc, 0);
    }

    // enforce d_i | d_{i+1} via gcd/lcm exchanges
    std::sort(diag.begin(), diag.end());
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < diag.size(); ++i)
            for (size_t j = i + 1; j < diag.size(); ++j)
                if (diag[j] % diag[i] != 0) {
                    bigint g = boost::multiprecision::gcd(diag[i], diag[j]);
                    bigint l = diag[i] / g * diag[j];
                    diag[i] = g;
                    diag[j] = l;
                    changed = true;
                }
        std::sort(diag.begin(), diag.end());
    }
    return diag;
}

long long matrix_rank_z(const SparseMat& a) {
    return (long long)smith_invariants(a).size();
}

long long matrix_rank_fp(const SparseMat& a, long long p) {
    require(p >= 2, "matrix_rank_fp: modulus must be at least 2");
    Ring ring{p};
    std::vector<std::map<int, long long>> rows(a.rows);
    for (int c = 0; c < a.cols; ++c)
        for (auto& [r, v] : a.col[c]) {
            long long rv = ring.reduce(v);
            if (rv) rows[r][c] = rv;
        }
    // modular inverse by Fermat, p prime by contract
    auto inv = [&](long long x) {
        long long r = 1, b = ring.reduce(x), e = p - 2;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    long long rank = 0;
    std::vector<bool> used(a.rows, false);
    for (int c = 0; c < a.cols; ++c) {
        int pivot = -1;
        for (int r = 0; r < a.rows; ++r)
            if (!used[r] && rows[r].count(c)) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        used[pivot] = true;
        ++rank;
        long long pv_inv = inv(rows[pivot][c]);
        for (int r = 0; r < a.rows; ++r) {
            if (r == pivot || !rows[r].count(c)) continue;
            long long factor = rows[r][c] * pv_inv % p;
            for (auto& [cc, v] : rows[pivot]) {
                long long nv = ring.reduce(rows[r][cc] - factor * v);
                if (nv)
                    rows[r][cc] = nv;
                else
                    rows[r].erase(cc);
            }
        }
    }
    return rank;
}

std::string to_string(const HomologyZ& h) {
    std::ostringstream os;
    if (h.free_rank == 0 && h.torsion.empty()) return "0";
    bool first = true;
    if (h.free_rank > 0) {
        os << "Z";
        if (h.free_rank > 1) os << "^" << h.free_rank;
        first = false;
    }
    for (auto& t : h.torsion) {
        if (!first) os << " + ";
        os << "Z/" << t;
        first = false;
    }
    return os.str();
}

HomologyZ homology_z(const ChainComplex& c, int d) {
    require(c.ring().is_integers(), "homology_z: integer coefficients required");
    require(c.in_window(d), "homology_z: degree out of window");
    long long n = c.rank(d);
    long long r_out = matrix_rank_z(c.diff(d));
    std::vector<bigint> inv = smith_invariants(c.diff(d + 1));
    HomologyZ h;
    h.free_rank = n - r_out - (long long)inv.size();
    for (auto& v : inv)
        if (v > 1) h.torsion.push_back(v);
    return h;
}

long long homology_dim_fp(const ChainComplex& c, int d, long long p) {
    require(c.in_window(d), "homology_dim_fp: degree out of window");
    SparseMat dout = c.diff(d), din = c.diff(d + 1);
    return c.rank(d) - matrix_rank_fp(dout, p) - matrix_rank_fp(din, p);
}

std::vector<std::vector<bigint>> hermite_columns(const SparseMat& a) {
    // dense columns; span comparisons only arise on small matrices
    std::vector<std::vector<bigint>> cols;
    for (int c = 0; c < a.cols; ++c) {
        std::vector<bigint> col(a.rows, 0);
        for (auto& [r, v] : a.col[c]) col[r] = v;
        cols.push_back(std::move(col));
    }
    size_t lead = 0;
    for (int r = 0; r < a.rows && lead < cols.size(); ++r) {
        // gcd-combine all columns >= lead at row r into column lead
        while (true) {
            size_t best = lead;
            bool found = false;
            for (size_t c = lead; c < cols.size(); ++c)
                if (cols[c][r] != 0 &&
                    (!found || babs(cols[c][r]) < babs(cols[best][r]))) {
                    best = c;
                    found = true;
                }
            if (!found) break;
            std::swap(cols[lead], cols[best]);
            bool clean = true;
            for (size_t c = lead + 1; c < cols.size(); ++c) {
                if (cols[c][r] == 0) continue;
                bigint q = tdiv(cols[c][r], cols[lead][r]);
                for (int rr = 0; rr < a.rows; ++rr) cols[c][rr] -= q * cols[lead][rr];
                if (cols[c][r] != 0) clean = false;
            }
            if (clean) break;
        }
        if (cols[lead][r] == 0) continue;
        if (cols[lead][r] < 0)
            for (int rr = 0; rr < a.rows; ++rr) cols[lead][rr] = -cols[lead][rr];
        // reduce earlier columns at this pivot row into [0, pivot)
        for (size_t c = 0; c < lead; ++c) {
            bigint q = cols[c][r] / cols[lead][r];
            if (cols[c][r] - q * cols[lead][r] < 0) q -= 1;
            if (q != 0)
                for (int rr = 0; rr < a.rows; ++rr) cols[c][rr] -= q * cols[lead][rr];
        }
        ++lead;
    }
    cols.resize(lead);
    // pivot columns were built top row down, so they are already ordered;
    // sort for a stable canonical answer anyway
    std::sort(cols.begin(), cols.end());
    return cols;
}

bool same_column_span_z(const SparseMat& a, const SparseMat& b) {
    require(a.rows == b.rows, "same_column_span_z: row count mismatch");
    return hermite_columns(a) == hermite_columns(b);
}

} // namespace symjoin
