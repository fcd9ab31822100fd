#include "igs/core.hpp"

#include <cmath>
#include <sstream>

namespace igs {

namespace {

bool finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

void check_user(int user) {
    if (user != 0 && user != 1)
        throw ValidationError("user index must be 0 or 1");
}

}  // namespace

Channel::Channel(Complex h11, Complex h12, Complex h21, Complex h22) {
    h_[0][0] = h11;
    h_[0][1] = h12;
    h_[1][0] = h21;
    h_[1][1] = h22;
    for (int r = 0; r < 2; ++r) {
        for (int t = 0; t < 2; ++t) {
            if (!finite(h_[r][t]))
                throw ValidationError("channel entries must be finite");
            mag_[r][t] = std::abs(h_[r][t]);
            mag2_[r][t] = std::norm(h_[r][t]);
            phase_[r][t] = std::arg(h_[r][t]);
        }
    }
    if (mag_[0][0] == 0.0 || mag_[1][1] == 0.0)
        throw ValidationError("direct channel gains h11, h22 must be nonzero");
}

void require_valid(const PowerConstraint& pc) {
    if (!(std::isfinite(pc.p1) && pc.p1 > 0.0))
        throw ValidationError("power cap p1 must be finite and > 0");
    if (!(std::isfinite(pc.p2) && pc.p2 > 0.0))
        throw ValidationError("power cap p2 must be finite and > 0");
    if (!(std::isfinite(pc.noise_var) && pc.noise_var > 0.0))
        throw ValidationError("noise_var must be finite and > 0");
}

namespace {

constexpr double kValidityTol = 1e-9;

void append(std::vector<Violation>& out, Violation::Kind kind,
            const std::string& msg) {
    out.push_back(Violation{kind, msg});
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

std::vector<Violation> validate_shape(const Signaling& sig) {
    std::vector<Violation> out;
    if (!std::isfinite(sig.c1) || !std::isfinite(sig.c2) || !finite(sig.ct1) ||
        !finite(sig.ct2)) {
        append(out, Violation::Kind::non_finite,
               "signaling entries must be finite");
        return out;
    }
    if (sig.c1 < -kValidityTol)
        append(out, Violation::Kind::negative_covariance,
               "c1 = " + fmt(sig.c1) + " is negative");
    if (sig.c2 < -kValidityTol)
        append(out, Violation::Kind::negative_covariance,
               "c2 = " + fmt(sig.c2) + " is negative");
    if (std::abs(sig.ct1) > sig.c1 + kValidityTol)
        append(out, Violation::Kind::pseudo_exceeds_covariance,
               "|ct1| = " + fmt(std::abs(sig.ct1)) + " exceeds c1 = " + fmt(sig.c1));
    if (std::abs(sig.ct2) > sig.c2 + kValidityTol)
        append(out, Violation::Kind::pseudo_exceeds_covariance,
               "|ct2| = " + fmt(std::abs(sig.ct2)) + " exceeds c2 = " + fmt(sig.c2));
    return out;
}

std::vector<Violation> validate(const Signaling& sig, const PowerConstraint& pc) {
    std::vector<Violation> out = validate_shape(sig);
    if (!out.empty() && out.front().kind == Violation::Kind::non_finite)
        return out;
    if (sig.c1 > pc.p1 + kValidityTol)
        append(out, Violation::Kind::power_exceeded,
               "c1 = " + fmt(sig.c1) + " exceeds power cap " + fmt(pc.p1));
    if (sig.c2 > pc.p2 + kValidityTol)
        append(out, Violation::Kind::power_exceeded,
               "c2 = " + fmt(sig.c2) + " exceeds power cap " + fmt(pc.p2));
    return out;
}

SecondOrderStats received_stats(const Channel& ch, const Signaling& sig,
                                double noise_var, int user) {
    check_user(user);
    const int other = 1 - user;
    const double cs[2] = {sig.c1, sig.c2};
    const Complex cts[2] = {sig.ct1, sig.ct2};
    SecondOrderStats s;
    s.cov = ch.mag2(user, user) * cs[user] + ch.mag2(user, other) * cs[other] +
            noise_var;
    s.pcov = ch.h(user, user) * ch.h(user, user) * cts[user] +
             ch.h(user, other) * ch.h(user, other) * cts[other];
    return s;
}

SecondOrderStats interference_stats(const Channel& ch, const Signaling& sig,
                                    double noise_var, int user) {
    check_user(user);
    const int other = 1 - user;
    const double cs[2] = {sig.c1, sig.c2};
    const Complex cts[2] = {sig.ct1, sig.ct2};
    SecondOrderStats s;
    s.cov = ch.mag2(user, other) * cs[other] + noise_var;
    s.pcov = ch.h(user, other) * ch.h(user, other) * cts[other];
    return s;
}

std::optional<double> entropy(const SecondOrderStats& s) {
    if (s.cov <= 0.0)
        return std::nullopt;
    const double ratio2 = std::norm(s.pcov) / (s.cov * s.cov);
    if (ratio2 >= 1.0)
        return std::nullopt;
    constexpr double pi = 3.14159265358979323846;
    return std::log(pi * std::exp(1.0) * s.cov) + 0.5 * std::log1p(-ratio2);
}

double proper_rate(const Channel& ch, double c1, double c2, double noise_var,
                   int user) {
    check_user(user);
    const int other = 1 - user;
    const double cs[2] = {c1, c2};
    return std::log1p(ch.mag2(user, user) * cs[user] /
                      (noise_var + ch.mag2(user, other) * cs[other]));
}

double user_rate(const Channel& ch, const Signaling& sig, double noise_var,
                 int user) {
    check_user(user);
    const auto bad = validate_shape(sig);
    if (!bad.empty())
        throw ValidationError("invalid signaling: " + bad.front().message);
    const SecondOrderStats y = received_stats(ch, sig, noise_var, user);
    const SecondOrderStats s = interference_stats(ch, sig, noise_var, user);
    // noise_var > 0 keeps both ratios strictly below 1 for valid signaling,
    // so the correction is always finite.
    const double ry = std::norm(y.pcov) / (y.cov * y.cov);
    const double rs = std::norm(s.pcov) / (s.cov * s.cov);
    return proper_rate(ch, sig.c1, sig.c2, noise_var, user) +
           0.5 * (std::log1p(-ry) - std::log1p(-rs));
}

}  // namespace igs
