#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace funmv {

using index_t = std::int64_t;

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};
template <class T>
inline constexpr bool is_complex_v = is_complex<T>::value;

template <class T>
struct real_of {
    using type = T;
};
template <class T>
struct real_of<std::complex<T>> {
    using type = T;
};
template <class T>
using real_t = typename real_of<T>::type;

template <class T>
constexpr real_t<T> real_part(const T& x) {
    if constexpr (is_complex_v<T>)
        return x.real();
    else
        return x;
}

template <class T>
constexpr real_t<T> imag_part(const T& x) {
    if constexpr (is_complex_v<T>)
        return x.imag();
    else
        return real_t<T>(0);
}

template <class T>
constexpr T conj_of(const T& x) {
    if constexpr (is_complex_v<T>)
        return std::conj(x);
    else
        return x;
}

/// Explicit matvec accumulator. One count == one product of A with a
/// single column.
struct MatvecCounter {
    long long count = 0;
};

/// Malformed input files, dimension mismatches, bad arguments.
class input_error : public std::runtime_error {
  public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// Overflow or non-finite values met during computation.
class numerical_error : public std::runtime_error {
  public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace funmv
