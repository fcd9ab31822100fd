#pragma once

// Core domain types and second-order rate computations for the two-user
// Gaussian interference channel with (possibly improper) Gaussian inputs.
// Each input is described by its covariance C >= 0 and pseudo-covariance
// Ct with |Ct| <= C; interference is treated as additional Gaussian noise.
// All rates are in nats.

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace igs {

using Complex = std::complex<double>;

// Thrown when a domain invariant or an operation precondition is violated.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// 2x2 complex channel. Entry (r, t) couples transmitter t into receiver r;
// users are indexed 0 and 1. Direct gains must be nonzero. Magnitudes and
// phases are cached on construction.
class Channel {
public:
    Channel(Complex h11, Complex h12, Complex h21, Complex h22);

    Complex h(int r, int t) const { return h_[r][t]; }
    double mag(int r, int t) const { return mag_[r][t]; }
    double mag2(int r, int t) const { return mag2_[r][t]; }  // |h_rt|^2
    double phase(int r, int t) const { return phase_[r][t]; }  // in (-pi, pi]

private:
    Complex h_[2][2];
    double mag_[2][2];
    double mag2_[2][2];
    double phase_[2][2];
};

// Per-user transmit power caps and the common receiver noise variance.
struct PowerConstraint {
    double p1 = 1.0;
    double p2 = 1.0;
    double noise_var = 1.0;
};

// Throws ValidationError unless p1, p2, noise_var are finite and > 0.
void require_valid(const PowerConstraint& pc);

// Transmit strategy of both users: covariances c1, c2 and pseudo-covariances
// ct1, ct2. Proper signaling has ct1 = ct2 = 0.
struct Signaling {
    double c1 = 0.0;
    double c2 = 0.0;
    Complex ct1{0.0, 0.0};
    Complex ct2{0.0, 0.0};
};

// One violated signaling condition, with a human-readable message.
struct Violation {
    enum class Kind {
        negative_covariance,
        power_exceeded,
        pseudo_exceeds_covariance,
        non_finite,
    };
    Kind kind;
    std::string message;
};

// Checks sig against validity (c >= 0, |ct| <= c, finite) and the power caps.
// Comparisons use an absolute tolerance of 1e-9. Empty result = valid.
std::vector<Violation> validate(const Signaling& sig, const PowerConstraint& pc);

// Validity conditions only (no power caps); used by rate evaluation.
std::vector<Violation> validate_shape(const Signaling& sig);

// Covariance / pseudo-covariance of a scalar complex Gaussian quantity.
struct SecondOrderStats {
    double cov = 0.0;
    Complex pcov{0.0, 0.0};
};

// Achieved rates of the two users, in nats.
struct RatePair {
    double r1 = 0.0;
    double r2 = 0.0;
};

// Second-order stats of the full received signal at receiver `user`:
// cov = |h_r1|^2 c1 + |h_r2|^2 c2 + noise_var, pcov = h_r1^2 ct1 + h_r2^2 ct2.
SecondOrderStats received_stats(const Channel& ch, const Signaling& sig,
                                double noise_var, int user);

// Stats of interference-plus-noise at receiver `user` (other user's signal
// through the cross gain, plus noise).
SecondOrderStats interference_stats(const Channel& ch, const Signaling& sig,
                                    double noise_var, int user);

// Differential entropy log(pi e cov) + 0.5 log(1 - |pcov|^2 / cov^2) of a
// complex Gaussian with the given stats. nullopt when the stats are
// degenerate (cov = 0 or |pcov| = cov), where the entropy is -infinity.
std::optional<double> entropy(const SecondOrderStats& s);

// Rate of `user` under proper signaling with covariances (c1, c2):
// log(1 + |h_rr|^2 c_r / (noise_var + |h_rr'|^2 c_r')).
double proper_rate(const Channel& ch, double c1, double c2, double noise_var,
                   int user);

// Rate of `user` under general improper signaling: the proper term plus the
// improperness correction 0.5 log[(1 - |pcov_y|^2/cov_y^2) / (1 - |pcov_s|^2/cov_s^2)].
// Throws ValidationError if sig is not valid.
double user_rate(const Channel& ch, const Signaling& sig, double noise_var,
                 int user);

}  // namespace igs
