#pragma once

namespace orliczlab {

/// Largest exponent accepted before exp() is considered out of range.
inline constexpr double kExponentGuard = 700.0;

/// Arguments with |s| at or below this (or with s^2 < p) use the tail series of phi_p.
inline constexpr double kTailSeriesSwitch = 0.5;

/// phi_p(s) = e^{s^2} - sum_{k<p} s^{2k}/k!.
///
/// Evaluated through the tail series sum_{k>=p} s^{2k}/k! for small |s| (and for
/// s^2 < p) so that the subtraction never cancels. Throws OverflowError when s^2 > 700 and
/// InvalidArgument when p < 1.
double phi_p(double s, int p);

/// phi_p(x) * e^{log_weight} without forming e^{x^2} on its own.
///
/// Returns +infinity (rather than throwing) when x^2 + log_weight exceeds the
/// exponent guard; callers that integrate decide how to treat that.
double phi_p_weighted(double x, int p, double log_weight);

/// Inverse of phi_p on [0, inf): the unique s >= 0 with phi_p(s) = y.
double phi_p_inverse(double y, int p);

/// Upper bound of the tail sum_{k>=p} s^{2k}/k! relative to s^{2p} e^{s^2}: 1/p!.
double phi_p_tail_constant(int p);

}  // namespace orliczlab
