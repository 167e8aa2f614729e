#include "parab/w2poly.hpp"

namespace parab {

W2Poly::W2Poly(const W2Ring& r, std::vector<u64> c) : r_(&r), c_(std::move(c)) { trim(); }

void W2Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

W2Poly W2Poly::lift(const Poly& f) {
    const W2Ring& r = W2Ring::over(f.field());
    std::vector<u64> c;
    for (u64 v : f.codes()) c.push_back(r.lift(v));
    return W2Poly(r, std::move(c));
}

W2Poly W2Poly::constant(const Wp2Elem& c) { return W2Poly(c.ring(), {c.code()}); }

W2Poly W2Poly::x(const Field& f) { return W2Poly(W2Ring::over(f), {0, 1}); }

W2Poly W2Poly::operator+(const W2Poly& o) const {
    std::vector<u64> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = r_->add(i < c_.size() ? c_[i] : 0, i < o.c_.size() ? o.c_[i] : 0);
    return W2Poly(*r_, std::move(r));
}

W2Poly W2Poly::operator-(const W2Poly& o) const {
    std::vector<u64> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = r_->sub(i < c_.size() ? c_[i] : 0, i < o.c_.size() ? o.c_[i] : 0);
    return W2Poly(*r_, std::move(r));
}

W2Poly W2Poly::operator*(const W2Poly& o) const {
    if (is_zero() || o.is_zero()) return W2Poly(*r_);
    std::vector<u64> r(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r_->add(r[i + j], r_->mul(c_[i], o.c_[j]));
    }
    return W2Poly(*r_, std::move(r));
}

W2Poly W2Poly::operator*(const Wp2Elem& c) const {
    std::vector<u64> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = r_->mul(c_[i], c.code());
    return W2Poly(*r_, std::move(r));
}

W2Poly W2Poly::pow(u64 n) const {
    W2Poly r(*r_, {1}), b = *this;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

W2Poly W2Poly::derivative() const {
    std::vector<u64> r;
    for (size_t i = 1; i < c_.size(); ++i) r.push_back(r_->mul(c_[i], r_->from_int(i64(i))));
    return W2Poly(*r_, std::move(r));
}

Wp2Elem W2Poly::eval(const Wp2Elem& a) const {
    u64 acc = 0;
    for (int i = int(c_.size()) - 1; i >= 0; --i) acc = r_->add(r_->mul(acc, a.code()), c_[i]);
    return {r_, acc};
}

Poly W2Poly::reduce() const {
    std::vector<u64> c;
    for (u64 v : c_) c.push_back(r_->reduce(v));
    return Poly(r_->field(), std::move(c));
}

bool W2Poly::divisible_by_p() const {
    for (u64 v : c_)
        if (!r_->divisible_by_p(v)) return false;
    return true;
}

Poly W2Poly::div_p() const {
    std::vector<u64> c;
    for (u64 v : c_) {
        if (!r_->divisible_by_p(v)) throw ArithmeticError("W2 polynomial coefficient not divisible by p");
        c.push_back(r_->div_p(v));
    }
    return Poly(r_->field(), std::move(c));
}

}  // namespace parab
