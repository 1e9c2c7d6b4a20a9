#include "connexion/linalg.hpp"

#include "connexion/error.hpp"

#include <algorithm>

namespace connexion {

namespace {

// In-place reduced row echelon form of the augmented matrix; returns the
// pivot column of each nonzero row.
std::vector<size_t> rref(RationalMatrix& M, size_t ncols)
{
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < ncols && row < M.size(); ++col) {
        size_t sel = row;
        while (sel < M.size() && M[sel][col] == 0)
            ++sel;
        if (sel == M.size())
            continue;
        std::swap(M[row], M[sel]);
        Rational const inv = 1 / M[row][col];
        for (auto& v : M[row])
            v *= inv;
        for (size_t r = 0; r < M.size(); ++r) {
            if (r == row || M[r][col] == 0)
                continue;
            Rational const k = M[r][col];
            for (size_t c = col; c < M[r].size(); ++c)
                M[r][c] -= k * M[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

std::optional<std::vector<Rational>> solve_linear(RationalMatrix A, std::vector<Rational> b)
{
    if (A.size() != b.size())
        throw domain_error("solve_linear: dimension mismatch");
    size_t const ncols = A.empty() ? 0 : A[0].size();
    for (size_t r = 0; r < A.size(); ++r)
        A[r].push_back(b[r]);
    auto const pivots = rref(A, ncols);
    for (size_t r = pivots.size(); r < A.size(); ++r)
        if (A[r][ncols] != 0)
            return std::nullopt;
    std::vector<Rational> u(ncols, Rational(0));
    for (size_t r = 0; r < pivots.size(); ++r)
        u[pivots[r]] = A[r][ncols];
    return u;
}

int rank(RationalMatrix A)
{
    size_t const ncols = A.empty() ? 0 : A[0].size();
    return static_cast<int>(rref(A, ncols).size());
}

IntegerMatrix hermite_normal_form(IntegerMatrix M)
{
    if (M.empty())
        return M;
    size_t const ncols = M[0].size();
    size_t row = 0;
    for (size_t col = 0; col < ncols && row < M.size(); ++col) {
        // Euclid down the column until a single nonzero entry remains.
        for (;;) {
            size_t best = M.size();
            for (size_t r = row; r < M.size(); ++r)
                if (M[r][col] != 0 && (best == M.size() || abs(M[r][col]) < abs(M[best][col])))
                    best = r;
            if (best == M.size())
                break;
            std::swap(M[row], M[best]);
            bool done = true;
            for (size_t r = row + 1; r < M.size(); ++r) {
                if (M[r][col] == 0)
                    continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), M[r][col].get_mpz_t(), M[row][col].get_mpz_t());
                for (size_t c = col; c < ncols; ++c)
                    M[r][c] -= q * M[row][c];
                if (M[r][col] != 0)
                    done = false;
            }
            if (done)
                break;
        }
        if (M[row][col] == 0)
            continue;
        if (M[row][col] < 0)
            for (auto& v : M[row])
                v = -v;
        for (size_t r = 0; r < row; ++r) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), M[r][col].get_mpz_t(), M[row][col].get_mpz_t());
            if (q != 0)
                for (size_t c = col; c < ncols; ++c)
                    M[r][c] -= q * M[row][c];
        }
        ++row;
    }
    M.resize(row);
    return M;
}

} // namespace connexion
