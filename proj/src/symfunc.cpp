#include "ffec/symfunc.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace ffec {

namespace {

void gen_partitions(int rest, int max_part, Partition& cur, std::vector<Partition>& out) {
    if (rest == 0) {
        out.push_back(cur);
        return;
    }
    for (int a = std::min(rest, max_part); a >= 1; --a) {
        cur.push_back(a);
        gen_partitions(rest - a, a, cur, out);
        cur.pop_back();
    }
}

void validate_partition(const Partition& p) {
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 1) throw std::invalid_argument("partition parts must be positive");
        if (i && p[i] > p[i - 1]) throw std::invalid_argument("partition must be decreasing");
    }
}

int weight(const Partition& p) {
    int w = 0;
    for (int a : p) w += a;
    return w;
}

// All single border-strip removals of size t: (remaining partition, sign).
// Beta-set formulation: removing a strip of size t replaces one first-column
// hook length b by b - t; the sign is (-1)^(rows crossed).
std::vector<std::pair<Partition, int>> strip_removals(const Partition& lam, int t) {
    int L = int(lam.size());
    std::vector<int> beta(L);
    for (int i = 0; i < L; ++i) beta[i] = lam[i] + (L - 1 - i);
    std::vector<std::pair<Partition, int>> out;
    for (int idx = 0; idx < L; ++idx) {
        int target = beta[idx] - t;
        if (target < 0) continue;
        bool clash = false;
        int between = 0;
        for (int j = 0; j < L; ++j) {
            if (j == idx) continue;
            if (beta[j] == target) clash = true;
            if (beta[j] > target && beta[j] < beta[idx]) ++between;
        }
        if (clash) continue;
        std::vector<int> nb = beta;
        nb[idx] = target;
        std::sort(nb.begin(), nb.end(), std::greater<int>());
        Partition next;
        for (int i = 0; i < L; ++i) {
            int part = nb[i] - (L - 1 - i);
            if (part > 0) next.push_back(part);
        }
        out.push_back({std::move(next), (between % 2) ? -1 : 1});
    }
    return out;
}

std::int64_t mn_rec(const Partition& lam, const Partition& mu, size_t pos,
                    std::map<std::pair<Partition, size_t>, std::int64_t>& memo) {
    if (pos == mu.size()) return 1;  // weights matched, lam is empty here
    auto key = std::make_pair(lam, pos);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::int64_t total = 0;
    for (auto& [next, sign] : strip_removals(lam, mu[pos]))
        total += sign * mn_rec(next, mu, pos + 1, memo);
    memo.emplace(std::move(key), total);
    return total;
}

std::int64_t factorial_i64(int n) {
    std::int64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

std::int64_t binom_i64(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t b = 1;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

}  // namespace

std::vector<Partition> partitions(int K) {
    if (K < 0) throw std::invalid_argument("partitions: K must be >= 0");
    std::vector<Partition> out;
    Partition cur;
    gen_partitions(K, K, cur, out);
    if (K == 0) out.assign(1, {});
    return out;
}

std::int64_t partition_count(int K) {
    if (K < 0) throw std::invalid_argument("partition_count: K must be >= 0");
    std::vector<std::int64_t> p(size_t(K) + 1, 0);
    p[0] = 1;
    for (int n = 1; n <= K; ++n) {
        std::int64_t s = 0;
        for (int k = 1;; ++k) {
            int g1 = k * (3 * k - 1) / 2;
            int g2 = k * (3 * k + 1) / 2;
            if (g1 > n && g2 > n) break;
            std::int64_t term = 0;
            if (g1 <= n) term += p[n - g1];
            if (g2 <= n) term += p[n - g2];
            s += (k % 2) ? term : -term;
        }
        p[n] = s;
    }
    return p[K];
}

std::int64_t mn_character(const Partition& lambda, const Partition& mu) {
    validate_partition(lambda);
    validate_partition(mu);
    if (weight(lambda) != weight(mu))
        throw std::invalid_argument("mn_character: weight mismatch");
    if (lambda.empty()) return 1;
    std::map<std::pair<Partition, size_t>, std::int64_t> memo;
    return mn_rec(lambda, mu, 0, memo);
}

std::int64_t class_size(const Partition& mu) {
    validate_partition(mu);
    int K = weight(mu);
    std::int64_t z = 1;
    int run = 0;
    for (size_t i = 0; i < mu.size(); ++i) {
        z *= mu[i];
        run = (i && mu[i] == mu[i - 1]) ? run + 1 : 1;
        z *= run;
    }
    return factorial_i64(K) / z;
}

std::int64_t dim_two_row(int i, int j) {
    if (j < 0 || i < j || i + j < 1) throw std::invalid_argument("dim_two_row: need i >= j >= 0");
    return binom_i64(i + j, j) - binom_i64(i + j, j - 1);
}

std::int64_t hook_length_dim(const Partition& lambda) {
    validate_partition(lambda);
    int K = weight(lambda);
    if (K == 0) return 1;
    std::vector<int> conj(size_t(lambda[0]), 0);
    for (int part : lambda)
        for (int c = 0; c < part; ++c) ++conj[c];
    // Exact division: accumulate numerator and divide greedily.
    std::int64_t num = 1, den = 1;
    int step = 0;
    for (size_t r = 0; r < lambda.size(); ++r)
        for (int c = 0; c < lambda[r]; ++c) {
            ++step;
            num *= step;
            den *= std::int64_t(lambda[r] - c + conj[c] - int(r) - 1);
            if (num % den == 0) {
                num /= den;
                den = 1;
            }
        }
    return num / den;
}

std::complex<double> power_sum_eval(const Partition& lambda,
                                    const std::vector<std::complex<double>>& z) {
    validate_partition(lambda);
    std::complex<double> out{1.0, 0.0};
    for (int part : lambda) {
        std::complex<double> p{0.0, 0.0};
        for (const auto& x : z) {
            std::complex<double> v{1.0, 0.0};
            for (int m = 0; m < part; ++m) v *= x;
            p += v;
        }
        out *= p;
    }
    return out;
}

std::complex<double> schur_eval(const Partition& lambda,
                                const std::vector<std::complex<double>>& z) {
    validate_partition(lambda);
    if (lambda.empty()) return {1.0, 0.0};
    int K = weight(lambda);

    // Power sums p_1..p_K, then complete homogeneous h_0..h_K by Newton.
    std::vector<std::complex<double>> p(size_t(K) + 1, {0.0, 0.0});
    for (int m = 1; m <= K; ++m)
        for (const auto& x : z) {
            std::complex<double> v{1.0, 0.0};
            for (int t = 0; t < m; ++t) v *= x;
            p[m] += v;
        }
    std::vector<std::complex<double>> h(size_t(K) + 1, {0.0, 0.0});
    h[0] = {1.0, 0.0};
    for (int m = 1; m <= K; ++m) {
        std::complex<double> acc{0.0, 0.0};
        for (int t = 1; t <= m; ++t) acc += p[t] * h[m - t];
        h[m] = acc / double(m);
    }

    // Jacobi-Trudi determinant det(h_{lambda_i - i + j}) by Gaussian
    // elimination with partial pivoting.
    int L = int(lambda.size());
    std::vector<std::vector<std::complex<double>>> a(L, std::vector<std::complex<double>>(L));
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j) {
            int d = lambda[i] - i + j;
            a[i][j] = (d < 0 || d > K) ? std::complex<double>{0.0, 0.0} : h[d];
        }
    std::complex<double> det{1.0, 0.0};
    for (int col = 0; col < L; ++col) {
        int piv = col;
        for (int rr = col + 1; rr < L; ++rr)
            if (std::abs(a[rr][col]) > std::abs(a[piv][col])) piv = rr;
        if (std::abs(a[piv][col]) == 0.0) return {0.0, 0.0};
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (int rr = col + 1; rr < L; ++rr) {
            auto fac = a[rr][col] / a[col][col];
            for (int cc = col; cc < L; ++cc) a[rr][cc] -= fac * a[col][cc];
        }
    }
    return det;
}

}  // namespace ffec
