#include "symclass/polynomial.hpp"

#include "symclass/errors.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace symclass {

Polynomial Polynomial::constant(std::size_t dim, double c) {
    Polynomial p(dim);
    p.add_term(Exponents(dim, 0), c);
    return p;
}

Polynomial Polynomial::variable(std::size_t dim, std::size_t index) {
    if (index >= dim) throw InvalidArgument("polynomial variable index out of range");
    Polynomial p(dim);
    Exponents e(dim, 0);
    e[index] = 1;
    p.add_term(e, 1.0);
    return p;
}

int Polynomial::degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int k : e) s += k;
        d = std::max(d, s);
    }
    return d;
}

double Polynomial::operator()(const Vec& x) const {
    if (static_cast<std::size_t>(x.size()) != dim_)
        throw InvalidArgument("polynomial evaluated at point of wrong dimension");
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
        double m = c;
        for (std::size_t i = 0; i < dim_; ++i)
            for (int k = 0; k < e[i]; ++k) m *= x(static_cast<Eigen::Index>(i));
        sum += m;
    }
    return sum;
}

Polynomial Polynomial::derivative(std::size_t index) const {
    Polynomial d(dim_);
    for (const auto& [e, c] : terms_) {
        if (e[index] == 0) continue;
        Exponents f = e;
        f[index] -= 1;
        d.add_term(f, c * e[index]);
    }
    return d;
}

Polynomial& Polynomial::add_term(const Exponents& e, double c) {
    if (e.size() != dim_) throw InvalidArgument("monomial dimension mismatch");
    terms_[e] += c;
    if (terms_[e] == 0.0) terms_.erase(e);
    return *this;
}

void Polynomial::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == 0.0)
            it = terms_.erase(it);
        else
            ++it;
    }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r = *this;
    if (r.dim_ == 0) r.dim_ = o.dim_;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial r(std::max(dim_, o.dim_));
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            Exponents e(e1.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
            r.terms_[e] += c1 * c2;
        }
    r.prune();
    return r;
}

Polynomial Polynomial::operator*(double s) const {
    Polynomial r = *this;
    for (auto& [e, c] : r.terms_) c *= s;
    r.prune();
    return r;
}

Polynomial Polynomial::pow(int k) const {
    if (k < 0) throw InvalidArgument("negative polynomial power");
    Polynomial r = constant(dim_, 1.0);
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    os.precision(12);
    bool first = true;
    // Highest total degree first reads more naturally.
    std::vector<std::pair<Exponents, double>> ordered(terms_.rbegin(), terms_.rend());
    for (const auto& [e, c] : ordered) {
        double mag = c;
        if (!first) {
            os << (c < 0 ? " - " : " + ");
            mag = std::abs(c);
        } else if (c < 0) {
            os << "-";
            mag = -c;
        }
        first = false;
        bool has_var = false;
        for (int k : e) has_var = has_var || k > 0;
        if (!has_var || mag != 1.0) {
            os << mag;
            if (has_var) os << "*";
        }
        bool first_var = true;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!first_var) os << "*";
            first_var = false;
            os << "x" << (i + 1);
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

namespace {

class Parser {
public:
    Parser(std::string_view s, std::size_t dim) : s_(s), dim_(dim) {}

    Polynomial run() {
        Polynomial p = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("polynomial '" + std::string(s_) + "': " + msg, 1, static_cast<int>(pos_) + 1);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expr() {
        Polynomial acc(dim_);
        bool negate = false;
        if (eat('-'))
            negate = true;
        else
            eat('+');
        acc = term();
        if (negate) acc = -acc;
        for (;;) {
            if (eat('+'))
                acc = acc + term();
            else if (eat('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    Polynomial term() {
        Polynomial acc = power();
        while (eat('*')) acc = acc * power();
        return acc;
    }

    Polynomial power() {
        Polynomial base = atom();
        if (eat('^')) {
            skip();
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected integer exponent");
            int k = 0;
            std::from_chars(s_.data() + start, s_.data() + pos_, k);
            base = base.pow(k);
        }
        return base;
    }

    Polynomial atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial inner = expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (c == '-') {
            ++pos_;
            return -power();
        }
        if (c == 'x') {
            ++pos_;
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected variable index after 'x'");
            std::size_t idx = 0;
            std::from_chars(s_.data() + start, s_.data() + pos_, idx);
            if (idx < 1 || idx > dim_) fail("variable x" + std::to_string(idx) + " outside dimension");
            return Polynomial::variable(dim_, idx - 1);
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = s_.data() + pos_;
            char* end = nullptr;
            const std::string tail(begin, s_.size() - pos_);
            const double v = std::strtod(tail.c_str(), &end);
            const std::size_t used = static_cast<std::size_t>(end - tail.c_str());
            if (used == 0) fail("bad number");
            pos_ += used;
            return Polynomial::constant(dim_, v);
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view s_;
    std::size_t dim_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text, std::size_t dim) {
    if (dim == 0) throw InvalidArgument("polynomial dimension must be positive");
    return Parser(text, dim).run();
}

}  // namespace symclass
