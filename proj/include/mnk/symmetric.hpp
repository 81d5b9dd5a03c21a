// Symmetric-function constructors: elementary symmetric polynomials, power
// sums, and the Newton-identity conversion between them.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "mnk/polynomial.hpp"

namespace mnk {

// e_i(vars), expanded.  By convention e_0 = 1; i > |vars| is rejected for
// the public entry point but tolerated (as 0) by the Newton recursion.
inline Polynomial elementary_symmetric_unchecked(int i, const ContextPtr& ctx,
                                                 const std::vector<Polynomial>& vars) {
    if (i == 0) return Polynomial::constant(ctx, 1);
    if (i < 0 || i > static_cast<int>(vars.size())) return Polynomial::zero(ctx);
    // iterate i-subsets via the classic odometer
    const int n = static_cast<int>(vars.size());
    std::vector<int> idx(i);
    for (int j = 0; j < i; ++j) idx[j] = j;
    Polynomial out(ctx);
    while (true) {
        Polynomial prod = Polynomial::constant(ctx, 1);
        for (int j = 0; j < i; ++j) prod = prod * vars[idx[j]];
        out += prod;
        int j = i - 1;
        while (j >= 0 && idx[j] == n - i + j) --j;
        if (j < 0) break;
        ++idx[j];
        for (int l = j + 1; l < i; ++l) idx[l] = idx[l - 1] + 1;
    }
    return out;
}

inline Polynomial elementary_symmetric(int i, const ContextPtr& ctx,
                                       const std::vector<std::string>& var_names) {
    if (i < 1 || i > static_cast<int>(var_names.size()))
        throw std::invalid_argument("elementary_symmetric: index out of range");
    std::vector<Polynomial> vars;
    vars.reserve(var_names.size());
    for (const auto& v : var_names) vars.push_back(Polynomial::variable(ctx, v));
    return elementary_symmetric_unchecked(i, ctx, vars);
}

inline Polynomial power_sum(int i, const ContextPtr& ctx,
                            const std::vector<std::string>& var_names) {
    if (i < 1) throw std::invalid_argument("power_sum: index must be >= 1");
    Polynomial out(ctx);
    for (const auto& v : var_names) out += Polynomial::variable(ctx, v, i);
    return out;
}

// p_i written in the e_j via Newton's identities, then expanded back in the
// variables:  p_i = sum_{j=1}^{i-1} (-1)^{j-1} e_j p_{i-j} + (-1)^{i-1} i e_i.
// Expanding makes the identity checkable: the result minus power_sum(i) is
// exactly zero.
inline Polynomial newton_convert(int i, const ContextPtr& ctx,
                                 const std::vector<std::string>& var_names) {
    if (i < 1) throw std::invalid_argument("newton_convert: index must be >= 1");
    std::vector<Polynomial> vars;
    vars.reserve(var_names.size());
    for (const auto& v : var_names) vars.push_back(Polynomial::variable(ctx, v));

    std::vector<Polynomial> e(i + 1, Polynomial::zero(ctx));
    for (int j = 0; j <= i; ++j) e[j] = elementary_symmetric_unchecked(j, ctx, vars);

    std::vector<Polynomial> p(i + 1, Polynomial::zero(ctx));
    for (int s = 1; s <= i; ++s) {
        Polynomial acc(ctx);
        for (int j = 1; j < s; ++j) {
            Polynomial tprod = e[j] * p[s - j];
            acc += (j % 2 == 1) ? tprod : -tprod;
        }
        Polynomial top = Rational(s) * e[s];
        acc += (s % 2 == 1) ? top : -top;
        p[s] = acc;
    }
    return p[i];
}

}  // namespace mnk
