#pragma once
// Exact q-expansions of level-one modular forms: Eisenstein series in the
// normalisation with a_0 = -b_{2k}/4k and a_n = sigma_{2k-1}(n), the
// discriminant form, and rational Hecke eigenforms for the weights whose cusp
// space is one-dimensional.

#include <string>
#include <vector>

#include "mmv/rational.hpp"

namespace mmv {

struct QSeries {
    long weight = 0;
    std::vector<Rational> a;  // a[0..N]

    long truncation() const { return (long)a.size() - 1; }
    bool is_cusp() const { return !a.empty() && sgn(a[0]) == 0; }
};

enum class FormKind { eisenstein, cusp_eigenform };

struct FormLabel {
    FormKind kind;
    long weight;

    friend bool operator==(const FormLabel& x, const FormLabel& y) {
        return x.kind == y.kind && x.weight == y.weight;
    }
    friend bool operator<(const FormLabel& x, const FormLabel& y) {
        if (x.weight != y.weight) return x.weight < y.weight;
        return (int)x.kind < (int)y.kind;
    }
    std::string str() const {
        return (kind == FormKind::eisenstein ? "E" : "f") +
               std::to_string(weight);
    }
    static FormLabel E(long w) { return {FormKind::eisenstein, w}; }
    static FormLabel cusp(long w) { return {FormKind::cusp_eigenform, w}; }
};

// E_{2k} with a_0 = -b_{2k}/4k, a_n = sigma_{2k-1}(n), n = 1..N.
QSeries eisenstein_q(long weight, long N);

// q prod (1-q^n)^24, Hecke-normalised (a_1 = 1, a_n = tau(n)).
QSeries delta_q(long N);

// The unique normalised eigenform of weight in {12, 16, 18, 20, 22, 26}.
QSeries eigenform_q(long weight, long N);

// Series for an arbitrary label (weight-12 cusp label gives delta).
QSeries form_q(const FormLabel& f, long N);

// Descriptor of the attached differential form
//   (2 pi i)^{2k-1} f(tau) (X - tau Y)^{2k-2} dtau,
// kept symbolic: the q-series, the polynomial degree 2k-2, the deferred
// prefactor exponent 2k-1, and the tangential (constant-term) coefficient.
struct FormDescriptor {
    FormLabel label;
    QSeries series;
    long poly_degree;       // 2k - 2
    long prefactor_exp;     // power of 2 pi i carried by the form
    Rational tangential;    // a_0
};

FormDescriptor underline_form(const FormLabel& f, long N);

}  // namespace mmv
