#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <numeric>

#include "trisurf/graph.hpp"

namespace trisurf {

/// Exact rational over long long, normalized (positive denominator,
/// lowest terms).  Intermediate products go through __int128 so the
/// small coefficients of the derivation tables can never overflow.
class Rational {
public:
    Rational(long long num = 0, long long den = 1) {
        if (den == 0) throw invalid_input("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        long long g = std::gcd(num < 0 ? -num : num, den);
        num_ = g ? num / g : 0;
        den_ = g ? den / g : 1;
    }

    long long numerator() const { return num_; }
    long long denominator() const { return den_; }

    Rational operator-() const { return Rational(-num_, den_); }

    friend Rational operator+(Rational a, Rational b) {
        return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                    i128(a.den_) * b.den_);
    }
    friend Rational operator-(Rational a, Rational b) { return a + (-b); }
    friend Rational operator*(Rational a, Rational b) {
        return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(Rational a, Rational b) {
        if (b.num_ == 0) throw invalid_input("Rational: division by zero");
        return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rational& operator+=(Rational o) { return *this = *this + o; }
    Rational& operator-=(Rational o) { return *this = *this - o; }
    Rational& operator*=(Rational o) { return *this = *this * o; }

    friend bool operator==(Rational a, Rational b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(Rational a, Rational b) { return !(a == b); }
    friend bool operator<(Rational a, Rational b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator>(Rational a, Rational b) { return b < a; }
    friend bool operator<=(Rational a, Rational b) { return !(b < a); }
    friend bool operator>=(Rational a, Rational b) { return !(a < b); }

private:
    using i128 = __int128;

    static Rational make(i128 num, i128 den) {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        // normalize in 128 bits, then require the result to fit
        i128 gg = gcd128(num < 0 ? -num : num, den);
        if (gg > 1) {
            num /= gg;
            den /= gg;
        }
        if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX)
            throw std::overflow_error("Rational: overflow");
        return Rational((long long)num, (long long)den);
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        return a ? a : 1;
    }

    long long num_ = 0, den_ = 1;
};

/// Linear form over named integer quantities with exact rational
/// coefficients.  Zero coefficients are never stored.
class LinForm {
public:
    LinForm() = default;
    explicit LinForm(Rational constant) : constant_(constant) {}

    static LinForm var(const std::string& name, Rational coeff = 1) {
        LinForm f;
        if (coeff != Rational(0)) f.coeffs_[name] = coeff;
        return f;
    }

    LinForm& operator+=(const LinForm& o) {
        constant_ += o.constant_;
        for (auto& [n, c] : o.coeffs_) {
            auto it = coeffs_.emplace(n, 0).first;
            it->second += c;
            if (it->second == Rational(0)) coeffs_.erase(it);
        }
        return *this;
    }

    LinForm operator+(const LinForm& o) const {
        LinForm f = *this;
        f += o;
        return f;
    }

    LinForm operator-(const LinForm& o) const { return *this + o * Rational(-1); }

    LinForm operator*(Rational r) const {
        LinForm f;
        f.constant_ = constant_ * r;
        if (r != Rational(0))
            for (auto& [n, c] : coeffs_) f.coeffs_[n] = c * r;
        return f;
    }

    bool is_zero() const { return constant_ == Rational(0) && coeffs_.empty(); }

    Rational constant() const { return constant_; }
    Rational coeff(const std::string& name) const {
        auto it = coeffs_.find(name);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }
    const std::map<std::string, Rational>& coeffs() const { return coeffs_; }

    Rational evaluate(const std::map<std::string, long long>& values) const {
        Rational total = constant_;
        for (auto& [n, c] : coeffs_) {
            auto it = values.find(n);
            if (it == values.end())
                throw invalid_input("LinForm: no value for variable " + n);
            total += c * Rational(it->second);
        }
        return total;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        auto rat = [](Rational r) {
            std::ostringstream t;
            t << r.numerator();
            if (r.denominator() != 1) t << "/" << r.denominator();
            return t.str();
        };
        for (auto& [n, c] : coeffs_) {
            Rational a = c < Rational(0) ? -c : c;
            os << (first ? (a != c ? "-" : "") : (a != c ? " - " : " + "));
            if (a != Rational(1)) os << rat(a) << "*";
            os << n;
            first = false;
        }
        if (constant_ != Rational(0)) {
            Rational a = constant_ < Rational(0) ? -constant_ : constant_;
            os << (first ? (a != constant_ ? "-" : "") : (a != constant_ ? " - " : " + "));
            os << rat(a);
        }
        return os.str();
    }

private:
    std::map<std::string, Rational> coeffs_;
    Rational constant_ = 0;
};

/// An inequality normalized to "form >= 0".
struct Inequality {
    std::string id;
    LinForm form;
};

using InequalityRegistry = std::map<std::string, Inequality>;

namespace detail {

inline void register_ineq(InequalityRegistry& reg, const std::string& id,
                          const LinForm& form) {
    reg[id] = Inequality{id, form};
}

inline void register_equality(InequalityRegistry& reg, const std::string& id,
                              const LinForm& lhs, const LinForm& rhs) {
    register_ineq(reg, id + ".ge", lhs - rhs);
    register_ineq(reg, id + ".le", rhs - lhs);
}

}  // namespace detail

/// All hypothesis inequalities of both derivations, one id per
/// inequality with per-degree families expanded (Components.4 ...
/// Components.9 and so on).  Every form is normalized to ">= 0".
inline InequalityRegistry builtin_hypotheses() {
    using F = LinForm;
    auto V = [](const std::string& n, Rational c = 1) { return F::var(n, c); };
    auto num = [](long long k) { return std::to_string(k); };
    InequalityRegistry reg;

    // shared size/edge-partition axioms (equalities, registered as pairs)
    {
        F sdef;
        for (int j = 4; j <= 9; ++j) sdef += V("S" + num(j));
        detail::register_equality(reg, "Sdef", V("S"), sdef);
        F adef;
        for (int j = 4; j <= 10; ++j) adef += V("A" + num(j));
        detail::register_equality(reg, "Adef", V("A"), adef);
        detail::register_equality(reg, "Vdef", V("V"),
                                  V("S") + V("N") + V("A") + V("Z"));
        F esn;
        for (int j = 4; j <= 9; ++j) esn += V("S" + num(j), j);
        detail::register_equality(reg, "eSNdef", V("eSN"), esn);
        F classes = V("eSN") + V("eN") + V("eNA") + V("eNZ") + V("eA") +
                    V("eAZ") + V("eZ");
        detail::register_equality(reg, "WholeGraph", classes,
                                  V("V", 3) + V("g", 3) + F(-6));
    }

    // genus and neighbourhood-count hypotheses
    {
        F jsj;
        for (int j = 4; j <= 9; ++j) jsj += V("S" + num(j), j);
        detail::register_ineq(reg, "Sg", V("g") - V("S"));
        detail::register_ineq(reg, "N", jsj - V("N"));
        detail::register_ineq(reg, "3A", V("eNA") - V("A", 3));
        detail::register_ineq(reg, "10Z",
                              V("eZ", 2) + V("eNZ") + V("eAZ") - V("Z", 10));
        F jaj;
        for (int j = 4; j <= 10; ++j) jaj += V("A" + num(j), j);
        detail::register_ineq(reg, "iAi", V("eA", 2) + V("eNA") + V("eAZ") - jaj);
    }

    // per-degree families
    for (int i = 4; i <= 9; ++i) {
        std::string si = num(i);
        if (i >= 5)
            detail::register_ineq(reg, "Ui." + si,
                                  V("U" + num(i - 1)) + V("S" + si, i) - V("U" + si));
        F comp = V("c" + si) - V("U" + si);
        for (int j = 4; j <= i; ++j) comp += V("S" + num(j), j - 1);
        detail::register_ineq(reg, "Components." + si, comp);
        detail::register_ineq(reg, "3Ui." + si, V("eU" + si, 2) - V("U" + si, 3));
        detail::register_ineq(reg, "3Vi." + si, V("eUY" + si) - V("V" + si, 3));
        F ahat;
        for (int j = 4; j <= i; ++j) ahat += V("A" + num(j));
        F fourv;
        for (int j = i + 1; j <= 9; ++j) fourv += V("S" + num(j), j);
        fourv += V("eUY" + si) + V("eY" + si, 2) + V("eNZ") + V("eNA");
        fourv += V("V" + si, -4) + V("W" + si, -(i + 1)) + ahat * Rational(-3);
        detail::register_ineq(reg, "4Vi." + si, fourv);
        F bi = V("g") - V("S") + V("U" + si) + V("c" + si, -2) +
               ahat * Rational(-1, 2);
        for (int j = 4; j <= i; ++j) bi += V("S" + num(j), Rational(-(j - 4), 2));
        detail::register_ineq(reg, "Bi." + si, bi);
        detail::register_equality(reg, "eN." + si, V("eN"),
                                  V("eU" + si) + V("eUY" + si) + V("eY" + si));
        detail::register_equality(reg, "Npart." + si, V("N"),
                                  V("U" + si) + V("V" + si) + V("W" + si));
    }

    // simple-mode hypotheses
    detail::register_ineq(reg, "ZZZ",
                          V("eNZ") + V("eAZ") + V("eZ", 2) - V("Z", 7));
    detail::register_ineq(reg, "AAA",
                          V("eNA") + V("eAZ") + V("eA", 2) - V("A", 4));
    detail::register_ineq(reg, "SN", V("eSN") - V("N"));
    detail::register_ineq(reg, "NN", V("eN", 2) - V("N", 3));
    detail::register_ineq(reg, "N6S", V("S", 6) - V("N"));
    return reg;
}

struct DerivationStep {
    std::string name;
    std::vector<std::pair<Rational, std::string>> multipliers;
    LinForm slack;
    Inequality claimed;  // normalized ">= 0", derived from the `gives` clause
};

namespace detail {

inline std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    auto b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

inline Rational parse_rational(const std::string& tok) {
    auto integer = [&](const std::string& s) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(s, &used);
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        if (used != s.size())
            throw invalid_input("derivation table: bad rational literal '" + tok +
                                "'");
        return v;
    };
    auto slash = tok.find('/');
    if (slash == std::string::npos) return Rational(integer(tok));
    return Rational(integer(tok.substr(0, slash)), integer(tok.substr(slash + 1)));
}

/// `4*U5 + 2*U7 - 3*g + 12` (symbols and rational constants, signs).
inline LinForm parse_form(const std::string& text) {
    LinForm form;
    std::size_t pos = 0;
    int sign = 1;
    bool expect_term = true;
    while (pos < text.size()) {
        char c = text[pos];
        if (c == ' ' || c == '\t') {
            ++pos;
        } else if (c == '+' || c == '-') {
            sign = c == '-' ? -sign : sign;
            expect_term = true;
            ++pos;
        } else {
            std::size_t end = text.find_first_of(" \t+-", pos);
            if (end == std::string::npos) end = text.size();
            std::string term = text.substr(pos, end - pos);
            pos = end;
            if (!expect_term)
                throw invalid_input("derivation table: missing operator before '" +
                                    term + "'");
            Rational coeff = sign;
            std::string name = term;
            auto star = term.find('*');
            if (star != std::string::npos) {
                coeff = parse_rational(term.substr(0, star)) * sign;
                name = term.substr(star + 1);
            }
            if (name.find_first_not_of("0123456789/") == std::string::npos)
                form += LinForm(parse_rational(name) * coeff);
            else
                form += LinForm::var(name, coeff);
            sign = 1;
            expect_term = false;
        }
    }
    return form;
}

}  // namespace detail

/// Parse a derivation table: `#` comment lines, plus one
/// `step <name>: <rat>*<id> + ... [; slack <form>] ; gives <lhs> <sense> <rhs>`
/// per step.
inline std::vector<DerivationStep> parse_derivation_table(const std::string& text) {
    std::vector<DerivationStep> steps;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = detail::trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("step ", 0) != 0)
            throw invalid_input("derivation table: unexpected line '" + line + "'");
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw invalid_input("derivation table: missing ':' in '" + line + "'");
        DerivationStep step;
        step.name = detail::trim(line.substr(5, colon - 5));
        std::string rest = line.substr(colon + 1);
        std::vector<std::string> clauses;
        std::size_t pos = 0;
        while (true) {
            auto semi = rest.find(';', pos);
            clauses.push_back(detail::trim(rest.substr(pos, semi - pos)));
            if (semi == std::string::npos) break;
            pos = semi + 1;
        }
        // clause 0: the multiplier list
        std::istringstream ms(clauses[0]);
        std::string term;
        while (std::getline(ms, term, '+')) {
            term = detail::trim(term);
            auto star = term.find('*');
            if (star == std::string::npos)
                throw invalid_input("derivation table: multiplier term '" + term +
                                    "' is not <rat>*<id>");
            Rational mult = detail::parse_rational(term.substr(0, star));
            if (mult < Rational(0))
                throw invalid_input("derivation table: negative multiplier in '" +
                                    term + "'");
            step.multipliers.push_back({mult, detail::trim(term.substr(star + 1))});
        }
        bool have_gives = false;
        for (std::size_t k = 1; k < clauses.size(); ++k) {
            if (clauses[k].rfind("slack ", 0) == 0) {
                step.slack = detail::parse_form(clauses[k].substr(6));
            } else if (clauses[k].rfind("gives ", 0) == 0) {
                std::string rel = clauses[k].substr(6);
                std::size_t le = rel.find("<="), ge = rel.find(">=");
                LinForm lhs, rhs;
                if (le != std::string::npos) {
                    lhs = detail::parse_form(rel.substr(0, le));
                    rhs = detail::parse_form(rel.substr(le + 2));
                    step.claimed = {step.name, rhs - lhs};
                } else if (ge != std::string::npos) {
                    lhs = detail::parse_form(rel.substr(0, ge));
                    rhs = detail::parse_form(rel.substr(ge + 2));
                    step.claimed = {step.name, lhs - rhs};
                } else {
                    throw invalid_input("derivation table: no <= or >= in '" + rel +
                                        "'");
                }
                have_gives = true;
            } else {
                throw invalid_input("derivation table: unknown clause '" +
                                    clauses[k] + "'");
            }
        }
        if (!have_gives)
            throw invalid_input("derivation table: step " + step.name +
                                " has no gives clause");
        steps.push_back(std::move(step));
    }
    return steps;
}

inline LinForm combine(const std::vector<std::pair<Rational, Inequality>>& parts) {
    LinForm total;
    for (auto& [mult, ineq] : parts) {
        if (mult < Rational(0)) throw invalid_input("combine: negative multiplier");
        total += ineq.form * mult;
    }
    return total;
}

struct StepCheck {
    bool ok = false;
    LinForm residual;  // claimed - combination - slack; zero iff ok
};

/// A step is sound iff its claimed form equals the nonnegative
/// combination of its hypotheses plus the discarded nonnegative slack.
inline StepCheck verify_step(const DerivationStep& step,
                             const InequalityRegistry& reg) {
    std::vector<std::pair<Rational, Inequality>> parts;
    for (auto& [mult, id] : step.multipliers) {
        auto it = reg.find(id);
        if (it == reg.end())
            throw invalid_input("verify_step: unknown inequality id '" + id + "'");
        parts.push_back({mult, it->second});
    }
    StepCheck check;
    check.residual = step.claimed.form - combine(parts) - step.slack;
    check.ok = check.residual.is_zero();
    return check;
}

struct DerivationResult {
    bool ok = false;
    std::string failed_step;       // empty when ok
    LinForm residual;              // nonzero on failure
    LinForm final_form;            // the last step's form, ">= 0" normalized
    // The final form rewritten as V <= genus_coeff * g + constant, and the
    // integer-rounded constant (both V and g are integers).
    Rational genus_coeff, constant;
    long long rounded_constant = 0;
    std::vector<std::string> verified_steps;
};

/// Verify a whole table, allowing later steps to cite earlier ones, and
/// round the final bound to integers.
inline DerivationResult verify_derivation(const std::vector<DerivationStep>& steps,
                                          InequalityRegistry reg) {
    DerivationResult result;
    for (auto& step : steps) {
        auto check = verify_step(step, reg);
        if (!check.ok) {
            result.failed_step = step.name;
            result.residual = check.residual;
            return result;
        }
        reg[step.name] = step.claimed;
        result.verified_steps.push_back(step.name);
    }
    if (steps.empty()) throw invalid_input("verify_derivation: empty table");
    result.final_form = steps.back().claimed.form;
    Rational cv = -result.final_form.coeff("V");
    Rational cg = result.final_form.coeff("g");
    Rational cc = result.final_form.constant();
    if (cv <= Rational(0) || result.final_form.coeffs().size() != 2)
        throw invalid_input(
            "verify_derivation: final step is not a bound on V in terms of g");
    result.genus_coeff = cg / cv;
    result.constant = cc / cv;
    if (result.genus_coeff.denominator() != 1)
        throw invalid_input("verify_derivation: genus coefficient is not integral");
    // V <= cg/cv * g + cc/cv and both sides integral except the constant:
    // round the constant down
    long long num = result.constant.numerator(), den = result.constant.denominator();
    result.rounded_constant = num >= 0 ? num / den : -((-num + den - 1) / den);
    result.ok = true;
    return result;
}

struct InstanceCheck {
    bool holds = false;
    Rational gap;  // value of the ">= 0" form; nonnegative iff holds
};

inline InstanceCheck instantiate(const Inequality& ineq,
                                 const std::map<std::string, long long>& values) {
    InstanceCheck c;
    c.gap = ineq.form.evaluate(values);
    c.holds = c.gap >= Rational(0);
    return c;
}

}  // namespace trisurf
