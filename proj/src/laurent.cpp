#include "hochrr/laurent.hpp"

#include <sstream>

namespace hochrr {

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    if (nvars_ != o.nvars_ && !o.terms_.empty() && !terms_.empty())
        throw ContextMismatch("LaurentPoly: variable context mismatch");
    if (terms_.empty())
        nvars_ = o.nvars_;
    for (auto& [e, c] : o.terms_)
        add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    if (nvars_ != o.nvars_ && !o.terms_.empty() && !terms_.empty())
        throw ContextMismatch("LaurentPoly: variable context mismatch");
    if (terms_.empty())
        nvars_ = o.nvars_;
    for (auto& [e, c] : o.terms_)
        add_term(e, -c);
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rat& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_)
        v *= c;
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.nvars_ != b.nvars_ && !a.terms_.empty() && !b.terms_.empty())
        throw ContextMismatch("LaurentPoly: variable context mismatch");
    LaurentPoly r(a.nvars_);
    for (auto& [ea, ca] : a.terms_)
        for (auto& [eb, cb] : b.terms_)
            r.add_term(expo_add(ea, eb), ca * cb);
    return r;
}

LaurentPoly LaurentPoly::shifted(const Expo& e) const {
    LaurentPoly r(nvars_);
    for (auto& [t, c] : terms_)
        r.terms_.emplace(expo_add(t, e), c);
    return r;
}

std::string LaurentPoly::str(const std::vector<std::string>& names) const {
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : terms_) {
        if (!first)
            os << " + ";
        first = false;
        os << rat_str(c);
        for (int i = 0; i < nvars_; ++i)
            if (e[i] != 0) {
                os << "*" << names[i];
                if (e[i] != 1)
                    os << "^" << e[i];
            }
    }
    return os.str();
}

}  // namespace hochrr
