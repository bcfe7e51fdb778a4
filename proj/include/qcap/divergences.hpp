// Entropies and relative divergences, all in bits (base-2 logs).
//
// The alpha parameter is either a real value > 1 or the explicit limit-1
// symbol; limit-1 dispatches to the ordinary relative entropy rather than
// evaluating near alpha = 1.  Divergences return +inf exactly when the
// support condition fails: the support of rho overlaps the kernel of sigma
// by more than 1e-8 (projector trace overlap).

#pragma once

#include <array>
#include <limits>
#include <string>

#include "qcap/linalg.hpp"

namespace qcap {

class Alpha {
public:
    static Alpha limit1() { return Alpha(true, 1.0); }
    static Alpha of(double a);
    static Alpha parse(const std::string& s);

    bool is_limit1() const { return limit1_; }
    double value() const;  // throws for limit-1
    std::string str() const;

    friend bool operator==(const Alpha& a, const Alpha& b) {
        return a.limit1_ == b.limit1_ && (a.limit1_ || a.a_ == b.a_);
    }

private:
    Alpha(bool l, double a) : limit1_(l), a_(a) {}
    bool limit1_;
    double a_;
};

struct DivergenceValue {
    double bits = 0.0;
    bool is_infinite = false;

    static DivergenceValue infinite() {
        return {std::numeric_limits<double>::infinity(), true};
    }
    static DivergenceValue finite(double v) { return {v, false}; }
};

// -sum lambda log2 lambda over eigenvalues above the support cutoff.
double vn_entropy(const Matrix& rho);

double binary_entropy(double p);

// D(rho || sigma) = tr rho (log2 rho - log2 sigma); sigma may be subnormalized.
DivergenceValue rel_entropy(const Matrix& rho, const Matrix& sigma);

// Sandwiched divergence
//   (1/(alpha-1)) log2 tr{ (sigma^((1-alpha)/2alpha) rho sigma^((1-alpha)/2alpha))^alpha }
// for alpha > 1; limit-1 falls back to rel_entropy.
DivergenceValue sandwiched_renyi(const Matrix& rho, const Matrix& sigma, Alpha alpha);

// I(R>B) = H(B) - H(RB) on dims {d_R, d_B}.
double coherent_info_state(const Matrix& rho_rb, std::array<int, 2> dims);

// Support-overlap test shared by the divergences: trace of (support projector
// of rho) restricted to the kernel of sigma.
double support_kernel_overlap(const Matrix& rho, const Matrix& sigma);

}  // namespace qcap
