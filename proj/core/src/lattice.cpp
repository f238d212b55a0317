#include "dpf/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace dpf {

ZMat identity(size_t n)
{
    ZMat I(n, std::vector<mpz_class>(n, 0));
    for (size_t i = 0; i < n; ++i)
        I[i][i] = 1;
    return I;
}

namespace {

Real dot(const std::vector<Real>& x, const std::vector<Real>& y)
{
    Real s(0);
    for (size_t i = 0; i < x.size(); ++i)
        s += x[i] * y[i];
    return s;
}

void gram_schmidt(const RMat& B, RMat& Bs, RMat& mu, std::vector<Real>& norms)
{
    size_t n = B.size();
    Bs = B;
    mu.assign(n, std::vector<Real>(n, Real(0)));
    norms.assign(n, Real(0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < i; ++j) {
            if (norms[j].sign() == 0)
                continue;
            mu[i][j] = dot(B[i], Bs[j]) / norms[j];
            for (size_t k = 0; k < Bs[i].size(); ++k)
                Bs[i][k] -= mu[i][j] * Bs[j][k];
        }
        norms[i] = dot(Bs[i], Bs[i]);
    }
}

}  // namespace

ZMat lll(RMat& B, double delta)
{
    size_t n = B.size();
    ZMat T = identity(n);
    if (n <= 1)
        return T;
    RMat Bs, mu;
    std::vector<Real> norms;
    gram_schmidt(B, Bs, mu, norms);
    size_t k = 1;
    int guard = 0;
    while (k < n) {
        if (++guard > 100000)
            throw std::runtime_error("lll did not terminate");
        for (size_t jj = k; jj-- > 0;) {
            Real m = mu[k][jj];
            mpz_class r = m.round();
            if (r == 0)
                continue;
            Real rr(r);
            for (size_t c = 0; c < B[k].size(); ++c)
                B[k][c] -= rr * B[jj][c];
            for (size_t c = 0; c < n; ++c)
                T[k][c] -= r * T[jj][c];
            for (size_t j = 0; j <= jj; ++j)
                mu[k][j] -= rr * (j == jj ? Real(1) : mu[jj][j]);
        }
        Real lhs = norms[k];
        Real rhs = (Real(delta) - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1];
        if (lhs < rhs) {
            std::swap(B[k], B[k - 1]);
            std::swap(T[k], T[k - 1]);
            gram_schmidt(B, Bs, mu, norms);
            k = k > 1 ? k - 1 : 1;
        } else {
            ++k;
        }
    }
    return T;
}

ZMat hnf(ZMat A, ZMat* U)
{
    size_t m = A.size();
    if (m == 0)
        return {};
    size_t n = A[0].size();
    ZMat W = identity(m);
    size_t row = 0;
    for (size_t col = 0; col < n && row < m; ++col) {
        // gcd-combine all rows below into the pivot row
        for (size_t r = row + 1; r < m; ++r) {
            if (A[r][col] == 0)
                continue;
            mpz_class g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), A[row][col].get_mpz_t(), A[r][col].get_mpz_t());
            mpz_class u = A[row][col] / g, v = A[r][col] / g;
            for (size_t c = 0; c < n; ++c) {
                mpz_class x = A[row][c], y = A[r][c];
                A[row][c] = s * x + t * y;
                A[r][c] = u * y - v * x;
            }
            for (size_t c = 0; c < m; ++c) {
                mpz_class x = W[row][c], y = W[r][c];
                W[row][c] = s * x + t * y;
                W[r][c] = u * y - v * x;
            }
        }
        if (A[row][col] == 0)
            continue;
        if (A[row][col] < 0) {
            for (auto& x : A[row])
                x = -x;
            for (auto& x : W[row])
                x = -x;
        }
        for (size_t r = 0; r < row; ++r) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), A[r][col].get_mpz_t(), A[row][col].get_mpz_t());
            if (q == 0)
                continue;
            for (size_t c = 0; c < n; ++c)
                A[r][c] -= q * A[row][c];
            for (size_t c = 0; c < m; ++c)
                W[r][c] -= q * W[row][c];
        }
        ++row;
    }
    if (U)
        *U = W;
    A.resize(row);
    return A;
}

mpz_class det(ZMat A)
{
    size_t n = A.size();
    if (n == 0)
        return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (A[k][k] == 0) {
            size_t p = k + 1;
            while (p < n && A[p][k] == 0)
                ++p;
            if (p == n)
                return 0;
            std::swap(A[p], A[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                A[i][j] = A[i][j] * A[k][k] - A[i][k] * A[k][j];
                mpz_divexact(A[i][j].get_mpz_t(), A[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        prev = A[k][k];
    }
    mpz_class r = A[n - 1][n - 1] * sign;
    return abs(r);
}

std::vector<mpz_class> smith_invariants(ZMat A)
{
    A = hnf(A);
    size_t m = A.size();
    if (m == 0)
        return {};
    size_t n = A[0].size();
    // alternate row and column elimination until diagonal
    for (size_t k = 0; k < std::min(m, n); ++k) {
        for (;;) {
            // pivot: smallest nonzero entry in the remaining block
            size_t pr = m, pc = n;
            for (size_t i = k; i < m; ++i)
                for (size_t j = k; j < n; ++j)
                    if (A[i][j] != 0 && (pr == m || abs(A[i][j]) < abs(A[pr][pc]))) {
                        pr = i;
                        pc = j;
                    }
            if (pr == m)
                goto done;
            std::swap(A[k], A[pr]);
            for (auto& row : A)
                std::swap(row[k], row[pc]);
            bool clean = true;
            for (size_t i = k + 1; i < m; ++i) {
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), A[i][k].get_mpz_t(), A[k][k].get_mpz_t());
                if (q != 0)
                    for (size_t j = k; j < n; ++j)
                        A[i][j] -= q * A[k][j];
                if (A[i][k] != 0)
                    clean = false;
            }
            for (size_t j = k + 1; j < n; ++j) {
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), A[k][j].get_mpz_t(), A[k][k].get_mpz_t());
                if (q != 0)
                    for (size_t i = k; i < m; ++i)
                        A[i][j] -= q * A[i][k];
                if (A[k][j] != 0)
                    clean = false;
            }
            if (!clean)
                continue;
            // divisibility of the rest of the block
            bool divides = true;
            for (size_t i = k + 1; i < m && divides; ++i)
                for (size_t j = k + 1; j < n; ++j)
                    if (A[i][j] % A[k][k] != 0) {
                        for (size_t c = k; c < n; ++c)
                            A[k][c] += A[i][c];
                        divides = false;
                        break;
                    }
            if (divides)
                break;
        }
    }
done:
    std::vector<mpz_class> out;
    for (size_t k = 0; k < std::min(m, n); ++k)
        if (A[k][k] != 0)
            out.push_back(abs(A[k][k]));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace dpf
