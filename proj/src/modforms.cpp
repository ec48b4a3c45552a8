#include "mmv/modforms.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace mmv {

QSeries eisenstein_q(long weight, long N) {
    if (weight < 4 || weight % 2 != 0)
        throw std::invalid_argument("eisenstein_q: weight must be even >= 4");
    QSeries f;
    f.weight = weight;
    f.a.assign(N + 1, Rational(0));
    f.a[0] = -bernoulli(weight) / Rational(2 * weight);
    // sigma_{w-1}(n) by summing d^{w-1} over multiples of each divisor d.
    for (long d = 1; d <= N; d++) {
        Integer dp = pow_int(Integer(d), weight - 1);
        for (long n = d; n <= N; n += d) f.a[n] += Rational(dp);
    }
    return f;
}

// prod_{n>=1} (1-q^n) via Euler's pentagonal number theorem.
static std::vector<Integer> euler_product(long N) {
    std::vector<Integer> e(N + 1, 0);
    e[0] = 1;
    for (long k = 1;; k++) {
        long g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
        if (g1 > N && g2 > N) break;
        int s = (k % 2) ? -1 : 1;
        if (g1 <= N) e[g1] += s;
        if (g2 <= N && g2 != g1) e[g2] += s;
    }
    return e;
}

QSeries delta_q(long N) {
    if (N < 2) throw std::invalid_argument("delta_q: N >= 2 required");
    // (prod (1-q^n))^24 by repeated squaring of truncated series, then * q.
    std::vector<Integer> base = euler_product(N), acc(N + 1, 0);
    acc[0] = 1;
    auto mul = [N](const std::vector<Integer>& x, const std::vector<Integer>& y) {
        std::vector<Integer> r(N + 1, 0);
        for (long i = 0; i <= N; i++) {
            if (x[i] == 0) continue;
            for (long j = 0; i + j <= N; j++)
                if (y[j] != 0) r[i + j] += x[i] * y[j];
        }
        return r;
    };
    std::vector<Integer> p = base;
    for (int bit = 24; bit; bit >>= 1) {
        if (bit & 1) acc = mul(acc, p);
        if (bit > 1) p = mul(p, p);
    }
    QSeries f;
    f.weight = 12;
    f.a.assign(N + 1, Rational(0));
    for (long n = 1; n <= N; n++) f.a[n] = Rational(acc[n - 1]);
    return f;
}

QSeries eigenform_q(long weight, long N) {
    if (weight == 12) return delta_q(N);
    static const long ok[] = {16, 18, 20, 22, 26};
    bool found = false;
    for (long w : ok) found = found || w == weight;
    if (!found)
        throw std::invalid_argument(
            "eigenform_q: cusp space not one-dimensional at weight " +
            std::to_string(weight));
    // dim S_w = 1 here, so Delta * E_{w-12} normalised to a_1 = 1 is the
    // unique normalised eigenform.
    QSeries d = delta_q(N), e = eisenstein_q(weight - 12, N);
    QSeries f;
    f.weight = weight;
    f.a.assign(N + 1, Rational(0));
    for (long i = 1; i <= N; i++)
        for (long j = 0; i + j <= N; j++) f.a[i + j] += d.a[i] * e.a[j];
    Rational lead = f.a[1];
    for (auto& c : f.a) c /= lead;
    return f;
}

QSeries form_q(const FormLabel& f, long N) {
    static std::map<std::pair<FormLabel, long>, QSeries> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_pair(f, N);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    QSeries s = f.kind == FormKind::eisenstein ? eisenstein_q(f.weight, N)
                                               : eigenform_q(f.weight, N);
    cache.emplace(key, s);
    return s;
}

FormDescriptor underline_form(const FormLabel& f, long N) {
    FormDescriptor d;
    d.label = f;
    d.series = form_q(f, N);
    d.poly_degree = f.weight - 2;
    d.prefactor_exp = f.weight - 1;
    d.tangential = d.series.a[0];
    return d;
}

}  // namespace mmv
