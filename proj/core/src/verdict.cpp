#include "xsuperint/verdict.hpp"

#include "xsuperint/errors.hpp"

namespace xsuperint {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Match: return "MATCH";
        case Verdict::Normalization: return "NORMALIZATION";
        case Verdict::Mismatch: return "MISMATCH";
        case Verdict::Unresolvable: return "UNRESOLVABLE";
    }
    return "?";
}

Verdict classify(const std::vector<Rational>& computed, const std::vector<Rational>& claimed, Rational* ratio) {
    if (computed.size() != claimed.size() || computed.empty())
        throw DomainError("classify: sweeps must be non-empty and of equal length");
    std::optional<Rational> common;
    for (std::size_t i = 0; i < computed.size(); ++i) {
        if (claimed[i].is_zero() || computed[i].is_zero()) {
            if (claimed[i].is_zero() != computed[i].is_zero()) return Verdict::Mismatch;
            continue;
        }
        const Rational r = computed[i] / claimed[i];
        if (!common) common = r;
        else if (*common != r) return Verdict::Mismatch;
    }
    if (!common) common = Rational(1);
    if (ratio) *ratio = *common;
    return *common == Rational(1) ? Verdict::Match : Verdict::Normalization;
}

}  // namespace xsuperint
