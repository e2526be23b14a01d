#include "toepsv/reference_sets.hpp"

namespace toepsv {

MatrixSpec ReferenceSet::spec(std::size_t n) const {
    std::vector<Rational> values;
    values.reserve(a.size());
    for (const auto& s : a) values.push_back(Rational::parse(s));
    return MatrixSpec(Rational::parse(mu), std::move(values), n);
}

const std::vector<ReferenceSet>& reference_sets() {
    static const std::vector<ReferenceSet> sets = {
        {"i2", "100-1/6", {"7/3", "5/3"}},
        {"i3", "100-1/6", {"10/3", "1/3", "8/3"}},
        {"i4", "100-1/6", {"10/3", "1/3", "2/3", "5/3"}},
        {"i5", "100-1/6", {"20/9", "1/9", "2/9", "1/3", "5/9"}},
        {"i6", "100-1/6", {"2", "1/2", "2/3", "1", "1/3", "1/3"}},
        {"i7", "100-1/6", {"14/5", "1/5", "2/5", "1", "3/5", "4/5", "1/5"}},
        {"i8", "100-1/6", {"20/7", "2/7", "4/7", "6/7", "1/7", "5/7", "3/7", "1"}},
        {"i9", "100-1/6", {"20/7", "2/7", "4/7", "6/7", "1/7", "5/7", "3/7", "1", "1/7"}},
    };
    return sets;
}

}  // namespace toepsv
