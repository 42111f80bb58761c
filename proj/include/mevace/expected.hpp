#pragma once

#include <stdexcept>
#include <utility>
#include <variant>

namespace mevace {

// Minimal stand-in for std::expected (C++23), which GCC 11 does not ship.

template <class E>
struct Unexpected {
    E error;
};

template <class E>
Unexpected<E> unexpected(E e) {
    return Unexpected<E>{std::move(e)};
}

struct BadExpectedAccess : std::logic_error {
    BadExpectedAccess() : std::logic_error("value() called on an error result") {}
};

template <class T, class E>
class Expected {
public:
    Expected(T value) : v_(std::in_place_index<0>, std::move(value)) {}
    Expected(Unexpected<E> u) : v_(std::in_place_index<1>, std::move(u.error)) {}

    bool has_value() const { return v_.index() == 0; }
    explicit operator bool() const { return has_value(); }

    T& value() & {
        if (!has_value()) throw BadExpectedAccess();
        return std::get<0>(v_);
    }
    const T& value() const& {
        if (!has_value()) throw BadExpectedAccess();
        return std::get<0>(v_);
    }
    T&& value() && {
        if (!has_value()) throw BadExpectedAccess();
        return std::get<0>(std::move(v_));
    }

    const E& error() const { return std::get<1>(v_); }

    T* operator->() { return &value(); }
    const T* operator->() const { return &value(); }
    T& operator*() & { return value(); }
    const T& operator*() const& { return value(); }

private:
    std::variant<T, E> v_;
};

}  // namespace mevace
