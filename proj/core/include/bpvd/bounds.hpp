#pragma once

#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

namespace bpvd {

using BigInt = boost::multiprecision::cpp_int;

/// Exact values of the size-bound functions at a given budget k.  delta
/// already exceeds 64 bits for small k, hence arbitrary precision.
struct BoundsValues {
    BigInt delta;
    BigInt epsilon;
    BigInt phi;
    BigInt strip_l;
    BigInt strip_q;
};

/// The bound functions driving the reduction rules.
///
/// Strict mode evaluates the defining formulas:
///   delta(k)   = 12 * 12! * (k+1)^12 + k
///   epsilon(k) = delta(k)^2 (k+1) + 2 (k+1) delta(k) + 2 (k+1)^2
///   phi(k)     = 2 ((2 eps delta + 2 eps^2 delta + 1)(13 eps + 3))
///   l = 13 epsilon(k) + 3,  q = 5 epsilon(k)
///
/// Aggressive mode substitutes small override constants so the rules gated by
/// these thresholds can actually fire on desk-scale inputs; values not
/// overridden are derived from the overridden ones by the same formulas.
/// Aggressive results are certified per run by oracle cross-checks, not by
/// the strict constants.
class Bounds {
public:
    struct Overrides {
        std::optional<BigInt> delta;
        std::optional<BigInt> epsilon;
        std::optional<BigInt> phi;
        std::optional<BigInt> strip_l;
        std::optional<BigInt> strip_q;
    };

    static Bounds strict() { return Bounds({}, true); }
    static Bounds aggressive(Overrides o) { return Bounds(std::move(o), false); }

    bool is_strict() const { return strict_; }
    const Overrides& overrides() const { return overrides_; }

    /// eval_bounds: exact values (strict) or override-substituted values.
    BoundsValues eval(int k) const;

private:
    Bounds(Overrides o, bool strict) : overrides_(std::move(o)), strict_(strict) {}
    Overrides overrides_;
    bool strict_;
};

/// Strict delta(k), used for invariant checks independently of the mode.
BigInt strict_delta(int k);

} // namespace bpvd
