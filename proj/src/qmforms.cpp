#include "pillow/qmforms.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "pillow/linalg.hpp"

namespace pillow {

const std::vector<int>& generator_weights(GeneratorSet g) {
    static const std::vector<int> level1{2, 4, 6}, gamma02{2, 2, 4}, gamma2{2, 2, 2};
    switch (g) {
        case GeneratorSet::Level1: return level1;
        case GeneratorSet::Gamma02: return gamma02;
        case GeneratorSet::Gamma2: return gamma2;
    }
    throw std::logic_error("generator_weights");
}

std::vector<QSeries> generator_expansions(GeneratorSet g, long cutoff2) {
    switch (g) {
        case GeneratorSet::Level1:
            return {eisenstein(2, EisensteinScale::One, cutoff2),
                    eisenstein(4, EisensteinScale::One, cutoff2),
                    eisenstein(6, EisensteinScale::One, cutoff2)};
        case GeneratorSet::Gamma02:
            return {eisenstein(2, EisensteinScale::One, cutoff2),
                    eisenstein(2, EisensteinScale::Two, cutoff2),
                    eisenstein(4, EisensteinScale::Two, cutoff2)};
        case GeneratorSet::Gamma2:
            return {eisenstein(2, EisensteinScale::Half, cutoff2),
                    eisenstein(2, EisensteinScale::One, cutoff2),
                    eisenstein(2, EisensteinScale::Two, cutoff2)};
    }
    throw std::logic_error("generator_expansions");
}

long QMForm::mixed_weight() const {
    const auto& wts = generator_weights(gens);
    long w = 0;
    for (auto& [e, c] : terms) {
        long t = 0;
        for (size_t i = 0; i < e.size(); ++i) t += long(e[i]) * wts[i];
        w = std::max(w, t);
    }
    return w;
}

QSeries QMForm::expand(long cutoff2) const {
    auto gene = generator_expansions(gens, cutoff2);
    QSeries out(cutoff2);
    for (auto& [e, c] : terms) {
        QSeries t = QSeries::one(cutoff2) * c;
        for (size_t i = 0; i < e.size(); ++i)
            for (int j = 0; j < e[i]; ++j) t = t * gene[i];
        out = out + t;
    }
    return out;
}

QMForm QMForm::operator*(const Rat& s) const {
    QMForm out;
    out.gens = gens;
    if (s == 0) return out;
    for (auto& [e, c] : terms) out.terms[e] = c * s;
    return out;
}

QMForm QMForm::operator+(const QMForm& o) const {
    if (gens != o.gens) throw std::invalid_argument("QMForm: generator sets differ");
    QMForm out = *this;
    for (auto& [e, c] : o.terms) {
        Rat& t = out.terms[e];
        t += c;
        if (t == 0) out.terms.erase(e);
    }
    return out;
}

std::vector<std::vector<int>> monomial_basis(GeneratorSet g, int max_weight) {
    const auto& wts = generator_weights(g);
    std::vector<std::vector<int>> out;
    std::vector<int> cur(wts.size(), 0);
    std::function<void(size_t, int)> rec = [&](size_t i, int rem) {
        if (i == wts.size()) {
            out.push_back(cur);
            return;
        }
        for (int e = 0; e * wts[i] <= rem; ++e) {
            cur[i] = e;
            rec(i + 1, rem - e * wts[i]);
        }
        cur[i] = 0;
    };
    rec(0, max_weight);
    std::sort(out.begin(), out.end(), [&](const std::vector<int>& a, const std::vector<int>& b) {
        long wa = 0, wb = 0;
        for (size_t i = 0; i < a.size(); ++i) {
            wa += long(a[i]) * wts[i];
            wb += long(b[i]) * wts[i];
        }
        if (wa != wb) return wa < wb;
        return a < b;
    });
    return out;
}

QMForm recognize(const QSeries& series, GeneratorSet g, int max_weight, int margin) {
    auto basis = monomial_basis(g, max_weight);
    long cutoff2 = series.cutoff2();
    // exponent grid: integer q-powers unless the series (or a Gamma2 basis) uses halves
    long step = 2;
    if (g == GeneratorSet::Gamma2 || !series.integer_exponents_only()) step = 1;
    std::vector<long> positions;
    for (long e = 0; e <= cutoff2; e += step) positions.push_back(e);
    if (long(positions.size()) < long(basis.size()) + margin)
        throw RecognitionError("recognize: series too short for basis dimension plus margin");
    // expansions of the basis monomials
    auto gene = generator_expansions(g, cutoff2);
    std::vector<QSeries> cols;
    cols.reserve(basis.size());
    for (auto& e : basis) {
        QSeries t = QSeries::one(cutoff2);
        for (size_t i = 0; i < e.size(); ++i)
            for (int j = 0; j < e[i]; ++j) t = t * gene[i];
        cols.push_back(t);
    }
    size_t fit_rows = basis.size();
    std::vector<std::vector<Rat>> A;
    std::vector<Rat> b;
    for (size_t r = 0; r < fit_rows; ++r) {
        std::vector<Rat> row;
        row.reserve(basis.size());
        for (auto& cS : cols) row.push_back(cS.coeff_half(positions[r]));
        A.push_back(std::move(row));
        b.push_back(series.coeff_half(positions[r]));
    }
    auto sol = solve_linear(A, b);
    if (!sol) throw RecognitionError("recognize: inconsistent linear system");
    QMForm form;
    form.gens = g;
    for (size_t i = 0; i < basis.size(); ++i)
        if ((*sol)[i] != 0) form.terms[basis[i]] = (*sol)[i];
    // verification rows: every remaining coefficient must match
    for (size_t r = fit_rows; r < positions.size(); ++r) {
        Rat v = 0;
        for (size_t i = 0; i < basis.size(); ++i)
            if ((*sol)[i] != 0) v += (*sol)[i] * cols[i].coeff_half(positions[r]);
        if (v != series.coeff_half(positions[r]))
            throw RecognitionError("recognize: not quasimodular at this weight (verification failed)");
    }
    return form;
}

std::pair<Rat, long> GrowthPolynomial::at_hpow(long m) const {
    Rat coeff = 0;
    long pi2 = 0;
    bool seen = false;
    for (auto& [k, c] : terms) {
        if (k.first != m || c == 0) continue;
        if (seen) throw std::domain_error("GrowthPolynomial: mixed pi powers at one h power");
        coeff = c;
        pi2 = k.second;
        seen = true;
    }
    return {coeff, pi2};
}

namespace {

// Ev of a gamma02 generator as polynomial in X: index -> coefficients of X^j
std::vector<std::vector<Rat>> ev_generator_polys() {
    return {{Rat(-1, 2), Rat(-1, 24)},   // G2    -> -1/2 - X/24
            {Rat(-1, 4), Rat(-1, 96)},   // G2(2t)-> -1/4 - X/96
            {Rat(0), Rat(0), Rat(1, 3840)}};  // G4(2t) -> X^2/3840
}

std::vector<Rat> poly_mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    std::vector<Rat> r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

QMForm to_gamma02(const QMForm& form) {
    if (form.gens == GeneratorSet::Gamma02) return form;
    if (form.gens != GeneratorSet::Level1)
        throw std::invalid_argument("ev_map: only Gamma02 / Level1 forms supported");
    QMForm out;
    out.gens = GeneratorSet::Gamma02;
    for (auto& [e, c] : form.terms) {
        // G2(tau) is itself a Gamma02 generator; rewrite G4, G6 powers
        QMForm t;
        t.gens = GeneratorSet::Gamma02;
        t.terms[{e[0], 0, 0}] = c;
        for (int j = 0; j < e[1]; ++j) {
            QMForm acc;
            acc.gens = GeneratorSet::Gamma02;
            for (auto& [e1, c1] : t.terms)
                for (auto& [e2, c2] : level1_g4_in_gamma02().terms) {
                    std::vector<int> s{e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]};
                    Rat& v = acc.terms[s];
                    v += c1 * c2;
                    if (v == 0) acc.terms.erase(s);
                }
            t = acc;
        }
        for (int j = 0; j < e[2]; ++j) {
            QMForm acc;
            acc.gens = GeneratorSet::Gamma02;
            for (auto& [e1, c1] : t.terms)
                for (auto& [e2, c2] : level1_g6_in_gamma02().terms) {
                    std::vector<int> s{e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]};
                    Rat& v = acc.terms[s];
                    v += c1 * c2;
                    if (v == 0) acc.terms.erase(s);
                }
            t = acc;
        }
        out = out + t;
    }
    return out;
}

}  // namespace

const QMForm& level1_g4_in_gamma02() {
    static std::mutex mu;
    static QMForm form;
    static bool done = false;
    std::lock_guard<std::mutex> lock(mu);
    if (!done) {
        form = recognize(eisenstein(4, EisensteinScale::One, 24), GeneratorSet::Gamma02, 4, 4);
        done = true;
    }
    return form;
}

const QMForm& level1_g6_in_gamma02() {
    static std::mutex mu;
    static QMForm form;
    static bool done = false;
    std::lock_guard<std::mutex> lock(mu);
    if (!done) {
        form = recognize(eisenstein(6, EisensteinScale::One, 28), GeneratorSet::Gamma02, 6, 4);
        done = true;
    }
    return form;
}

GrowthPolynomial ev_map(const QMForm& input) {
    QMForm form = to_gamma02(input);
    auto gens = ev_generator_polys();
    const auto& wts = generator_weights(GeneratorSet::Gamma02);
    GrowthPolynomial out;
    for (auto& [e, c] : form.terms) {
        long w = 0;
        std::vector<Rat> poly{Rat(1)};
        for (size_t i = 0; i < e.size(); ++i) {
            w += long(e[i]) * wts[i];
            for (int j = 0; j < e[i]; ++j) poly = poly_mul(poly, gens[i]);
        }
        // ev contribution: h^{-w/2} * sum_j poly[j] (-4 pi^2 / h)^j
        for (size_t j = 0; j < poly.size(); ++j) {
            if (poly[j] == 0) continue;
            Rat v = c * poly[j] * rat_pow(Rat(-4), long(j));
            auto key = std::make_pair(w / 2 + long(j), long(j));
            Rat& t = out.terms[key];
            t += v;
            if (t == 0) out.terms.erase(key);
        }
    }
    return out;
}

std::pair<Rat, long> volume_from_form(const QMForm& form, long dim) {
    auto [lead, pi2] = ev_map(form).at_hpow(dim);
    if (lead == 0) throw std::domain_error("volume_from_form: vanishing leading coefficient");
    Rat norm = Rat(2 * dim) / (rat_pow(Rat(2), dim) * Rat(factorial(dim)));
    return {norm * lead, pi2};
}

Rat area_sv_constant(const QMForm& n0, const QMForm& cminus1, long dim) {
    auto [den, p1] = ev_map(n0).at_hpow(dim);
    if (den == 0) throw std::domain_error("area_sv_constant: N^0 leading coefficient vanishes");
    auto [num, p2] = ev_map(cminus1).at_hpow(dim);
    if (num == 0) return 0;
    if (p1 != p2) throw std::domain_error("area_sv_constant: pi-power mismatch");
    return num / den;
}

}  // namespace pillow
