#pragma once

#include <algorithm>
#include <vector>

#include "rational.hpp"

namespace zipshift {

/// Interval with exact rational endpoints and per-endpoint open/closed flags.
/// Degenerate intervals (lo == hi) only arise as computed intersections.
struct Interval {
    Rational lo, hi;
    bool lo_closed = false;
    bool hi_closed = false;

    static Interval open(Rational a, Rational b) { return {std::move(a), std::move(b), false, false}; }
    static Interval closed(Rational a, Rational b) { return {std::move(a), std::move(b), true, true}; }

    bool empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }

    Rational diameter() const { return empty() ? Rational(0) : Rational(hi - lo); }

    bool contains(const Rational& x) const {
        if (x < lo || x > hi) return false;
        if (x == lo && !lo_closed) return false;
        if (x == hi && !hi_closed) return false;
        return true;
    }

    Interval closure() const { return {lo, hi, true, true}; }

    Interval intersect(const Interval& o) const {
        Interval r;
        if (lo > o.lo) { r.lo = lo; r.lo_closed = lo_closed; }
        else if (lo < o.lo) { r.lo = o.lo; r.lo_closed = o.lo_closed; }
        else { r.lo = lo; r.lo_closed = lo_closed && o.lo_closed; }
        if (hi < o.hi) { r.hi = hi; r.hi_closed = hi_closed; }
        else if (hi > o.hi) { r.hi = o.hi; r.hi_closed = o.hi_closed; }
        else { r.hi = hi; r.hi_closed = hi_closed && o.hi_closed; }
        return r;
    }

    bool subset_of(const Interval& o) const {
        if (empty()) return true;
        bool lo_ok = o.lo < lo || (o.lo == lo && (o.lo_closed || !lo_closed));
        bool hi_ok = hi < o.hi || (hi == o.hi && (o.hi_closed || !hi_closed));
        return lo_ok && hi_ok;
    }

    friend bool operator==(const Interval& a, const Interval& b) {
        if (a.empty() && b.empty()) return true;
        return a.lo == b.lo && a.hi == b.hi && a.lo_closed == b.lo_closed &&
               a.hi_closed == b.hi_closed;
    }
};

/// Euclidean distance between two nonempty intervals (0 when they touch).
inline Rational interval_distance(const Interval& a, const Interval& b) {
    if (b.lo > a.hi) return Rational(b.lo - a.hi);
    if (a.lo > b.hi) return Rational(a.lo - b.hi);
    return Rational(0);
}

/// Same endpoints up to closure (the "equal up to closure" test the coding
/// layer needs for matching branch images against partition cells).
inline bool same_span(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi;
}

}  // namespace zipshift
