#include "bpvd/bounds.hpp"

#include <stdexcept>

namespace bpvd {

namespace {

BigInt pow_big(const BigInt& base, int exp) {
    BigInt r = 1;
    for (int i = 0; i < exp; i++) r *= base;
    return r;
}

} // namespace

BigInt strict_delta(int k) {
    if (k < 0) throw std::invalid_argument("bounds: negative k");
    BigInt fact12 = 1;
    for (int i = 2; i <= 12; i++) fact12 *= i;
    return 12 * fact12 * pow_big(k + 1, 12) + k;
}

BoundsValues Bounds::eval(int k) const {
    if (k < 0) throw std::invalid_argument("bounds: negative k");
    const BigInt kp1 = k + 1;
    BoundsValues v;
    v.delta = overrides_.delta ? *overrides_.delta : strict_delta(k);
    v.epsilon = overrides_.epsilon
                    ? *overrides_.epsilon
                    : v.delta * v.delta * kp1 + 2 * kp1 * v.delta + 2 * kp1 * kp1;
    v.phi = overrides_.phi
                ? *overrides_.phi
                : 2 * ((2 * v.epsilon * v.delta + 2 * v.epsilon * v.epsilon * v.delta + 1) *
                       (13 * v.epsilon + 3));
    v.strip_l = overrides_.strip_l ? *overrides_.strip_l : 13 * v.epsilon + 3;
    v.strip_q = overrides_.strip_q ? *overrides_.strip_q : 5 * v.epsilon;
    return v;
}

} // namespace bpvd
