#pragma once

/**
 * @file classifier.hpp
 * @brief Row of the image of tau for the curve (a, c, k), from square classes.
 *
 * Every row below the root is "E * base is a square", where E is a product of
 * -1, 2, b and a^2 - 4b (the row's mask) and base depends on the batch:
 *
 *   rows  2-17   c
 *   rows 18-24   x(alpha') = a + 2s^2 + 2sk            c = s^2
 *   rows 25-32   d (d + 2ak + 2ck - 2k^3)              d^2 = -(a^2-4b)(-a-c+k^2)
 *   rows 33-39   x(alpha') = a + 2s^2 - 2sk            s^2 = -a-c+k^2
 *   rows 40-47   c d (d + 2ck)                         d^2 = -c(a^2-4b)
 *   rows 48-55   d + x(alpha+T)                        c = s^2, d^2 = -(b/c)(a+2s^2-2sk)
 *   rows 56-63   d + c                                 s^2 = -a-c+k^2,
 *                                                      d^2 = (a+s^2-k^2)(a+2s^2-2sk)
 *
 * A row holds if any choice of the signs of s and d makes it a square. A base
 * that vanishes leaves the row undecided: it is reported and not counted.
 */

#include "oddorder/catalog.hpp"
#include "oddorder/ecurve.hpp"
#include "oddorder/factor.hpp"
#include "oddorder/table.hpp"

#include <optional>
#include <string>
#include <vector>

namespace oddorder {

struct RowCertificate {
    int row = 0;
    std::optional<Rational> s;  ///< sign choice used, when the batch has one
    std::optional<Rational> d;
    Rational value;  ///< E * base
    Rational root;   ///< sqrt(value)
};

struct ClassificationResult {
    std::vector<int> satisfied_rows;  ///< ascending
    std::optional<int> minimal_row;
    std::vector<RowCertificate> certificates;  ///< one per satisfied row
    std::vector<std::string> warnings;

    bool satisfies(int row) const {
        return std::find(satisfied_rows.begin(), satisfied_rows.end(), row) != satisfied_rows.end();
    }
};

namespace detail {

struct Choice {
    std::optional<Rational> s, d;
    Rational base;
};

inline std::string rat_str(const Rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

// Both roots of q when q is a rational square (one root if q = 0).
inline std::vector<Rational> signed_roots(const Rational& q) {
    Rational r;
    if (!is_rational_square(q, &r)) return {};
    if (r == 0) return {r};
    return {r, -r};
}

inline std::vector<Choice> batch_choices(const CurveParams& e, RowFamily family) {
    const Rational a = e.a, c = e.c, k = e.k, b = Rational(e.b), disc = Rational(e.disc_prime);
    const Rational xt = k * k - a - c;  // x(alpha + T)
    std::vector<Choice> out;
    switch (family) {
        case RowFamily::root: out.push_back({{}, {}, Rational(1)}); break;
        case RowFamily::c_twist: out.push_back({{}, {}, c}); break;
        case RowFamily::alpha_prime:
            for (const Rational& s : signed_roots(c)) out.push_back({s, {}, a + 2 * s * s + 2 * s * k});
            break;
        case RowFamily::d_twist_7:
            for (const Rational& d : signed_roots(-disc * xt))
                out.push_back({{}, d, d * (d + 2 * a * k + 2 * c * k - 2 * k * k * k)});
            break;
        case RowFamily::alpha_t_prime:
            for (const Rational& s : signed_roots(xt)) out.push_back({s, {}, a + 2 * s * s - 2 * s * k});
            break;
        case RowFamily::d_twist_15:
            for (const Rational& d : signed_roots(-c * disc)) out.push_back({{}, d, c * d * (d + 2 * c * k)});
            break;
        case RowFamily::d_twist_20:
            for (const Rational& s : signed_roots(c))
                for (const Rational& d : signed_roots(-(b / c) * (a + 2 * s * s - 2 * s * k)))
                    out.push_back({s, d, d + xt});
            break;
        case RowFamily::d_twist_35:
            for (const Rational& s : signed_roots(xt))
                for (const Rational& d : signed_roots((a + s * s - k * k) * (a + 2 * s * s - 2 * s * k)))
                    out.push_back({s, d, d + c});
            break;
    }
    return out;
}

inline Rational mask_value(const CurveParams& e, unsigned mask) {
    Rational v = 1;
    if (mask & kMinusOne) v *= -1;
    if (mask & kTwo) v *= 2;
    if (mask & kB) v *= Rational(e.b);
    if (mask & kDiscPrime) v *= Rational(e.disc_prime);
    return v;
}

}  // namespace detail

/// Evaluates all 63 row conditions (no lattice needed; minimal_row is unset).
inline ClassificationResult evaluate_rows(const CurveParams& e) {
    if (is_perfect_square(e.disc_prime))
        throw hypothesis_error("hypothesis violated: extra 2-torsion (a^2 - 4b is a square)");
    ClassificationResult res;
    for (const RowSpec& spec : kRowSpecs) {
        const Rational E = detail::mask_value(e, spec.mask);
        for (const detail::Choice& ch : detail::batch_choices(e, spec.family)) {
            const Rational value = E * ch.base;
            if (value == 0) {
                std::string w = "row " + std::to_string(spec.id) + ": element vanishes";
                if (ch.s) w += " at s=" + detail::rat_str(*ch.s);
                if (ch.d) w += " at d=" + detail::rat_str(*ch.d);
                res.warnings.push_back(w + "; condition not established");
                continue;
            }
            Rational root;
            if (!is_rational_square(value, &root)) continue;
            res.satisfied_rows.push_back(spec.id);
            res.certificates.push_back({spec.id, ch.s, ch.d, value, root});
            break;
        }
    }
    return res;
}

/// Satisfied rows with no satisfied row strictly below them.
inline std::vector<int> minimal_rows(const std::vector<int>& satisfied, const SubgroupCatalog& cat) {
    std::vector<int> out;
    for (int r : satisfied) {
        bool minimal = true;
        for (int s : satisfied)
            if (s != r && cat.is_ancestor(r, s)) minimal = false;
        if (minimal) out.push_back(r);
    }
    return out;
}

/// Classifies the curve; throws hypothesis_error when a^2 - 4b is a square or
/// the satisfied rows have no unique minimum.
inline ClassificationResult classify(const CurveParams& e, const SubgroupCatalog& cat) {
    ClassificationResult res = evaluate_rows(e);
    const std::vector<int> mins = minimal_rows(res.satisfied_rows, cat);
    if (mins.size() != 1) {
        std::string rows;
        for (int r : mins) rows += (rows.empty() ? "" : ",") + std::to_string(r);
        throw hypothesis_error(
            "hypothesis violated: image not among the 63 classes (im rho too small or alpha imprimitive); "
            "minimal satisfied rows {" + rows + "}");
    }
    res.minimal_row = mins.front();
    return res;
}

inline ClassificationResult classify(std::int64_t a, std::int64_t c, std::int64_t k, const SubgroupCatalog& cat) {
    return classify(curve_from_params(a, c, k), cat);
}

struct ClassifyReport {
    int row = 0;
    DensityValue density;
    bool is_exemplar = false;  ///< input equals the row's stored exemplar
    ClassificationResult result;
};

inline ClassifyReport classify_report(const CurveParams& e, const SubgroupCatalog& cat) {
    ClassifyReport rep;
    rep.result = classify(e, cat);
    rep.row = *rep.result.minimal_row;
    const CatalogClass& cls = cat.by_id(rep.row);
    rep.density = cls.density;
    rep.is_exemplar = cls.exemplar == CurveTriple{e.a, e.c, e.k};
    return rep;
}

}  // namespace oddorder
