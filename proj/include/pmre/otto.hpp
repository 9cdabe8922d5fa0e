// otto.hpp: quench-regime quantum Otto cycle energetics and efficiencies, from
// density-matrix traces (general) and from the chi-parameterized closed forms.

#pragma once

#include <optional>
#include <vector>

#include "pmre/types.hpp"

namespace pmre::otto {

// hbar = 1 and nu0 = 1 by convention; energies are reported in units of
// hbar*nu0. theta holds the quench phases theta_j (empty means all zero).
struct OttoParams {
    double nu0{1.0};
    double nu1{1.0};
    Cplx zeta_over_nu1{0.0};
    double nbar_A{0.0};
    Cplx alpha{0.0};
    std::vector<double> theta{};
};

// Per-stroke mean-energy changes; w1 + q2 + w3 + q4 = 0 (cycle closure).
struct CycleEnergetics {
    double w1;
    double q2;
    double w3;
    double q4;

    double total_work() const { return w1 + w3; }
    double closure() const { return w1 + q2 + w3 + q4; }
};

// r = ln(nu1/nu0) / 2.
double squeeze_param(double nu0, double nu1);

// kappa_1 = (zeta_1/nu_1) cosh r + conj(zeta_1/nu_1) sinh r.
Cplx kappa1(const OttoParams& params);

// chi = [2 sech(2r) Re(kappa_1 alpha*) + tanh(2r) Re(alpha*^2)] / (nbar_A - |alpha|^2).
// Rejects |nbar_A - |alpha|^2| < 1e-12.
double chi_closed_form(const OttoParams& params);

struct ChiComponents {
    double chi_a1;
    double chi_a2;
    double chi_c1;
    double chi_c2;
    double chi;
};

// The four coherence sums over the first- and second-neighbour diagonals of
// the supplied coefficient matrices (initial number basis), with the quench
// phases applied to the rho_A sums.
ChiComponents chi_general(const Mat& p_a, const Mat& q_c, const OttoParams& params);

// Closed-form energetics for thermal rho_A / coherent rho_C; exact
// consequences of the trace expressions, valid at nbar_A = nbar_C too.
CycleEnergetics energetics_closed(const OttoParams& params);

struct NumericEnergetics {
    CycleEnergetics energetics;
    double nbar_c_numeric;
    double tail_mass_a;
    double tail_mass_c;
    bool truncation_warning;
};

// The four trace expressions with H(tau_1) built from the displaced squeezed
// mode a_1 = cosh(r) a_0 + sinh(r) a_0^dag + (zeta_1/nu_1) I.
NumericEnergetics energetics_numeric(const Mat& rho_a, const Mat& rho_c,
                                     const OttoParams& params, const FockSpace& space);

enum class Regime { engine, zero_work, no_engine };

struct EfficiencyResult {
    std::optional<double> value;  // empty in the no-engine regime
    Regime regime;
};

// Piecewise quench efficiency keyed on sign(nbar_A - nbar_C) and chi against
// the thresholds; delta_n_sign carries the sign of nbar_A - nbar_C.
EfficiencyResult efficiency_from_chi(double nu0, double nu1, double chi,
                                     int delta_n_sign);
EfficiencyResult efficiency(const OttoParams& params);

// 1 - min(nu1/nu0, nu0/nu1), the quasi-static reference bound.
double otto_reference(double nu0, double nu1);

struct ChiThresholds {
    double surpass_high;  // efficiency beats the reference for chi above this
    double surpass_low;   // ... or below this
    double zero_work;     // chi where the extracted work vanishes
};

ChiThresholds chi_thresholds(double nu0, double nu1);

} // namespace pmre::otto
