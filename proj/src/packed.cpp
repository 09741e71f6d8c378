#include "packmatch/packed.hpp"

namespace packmatch {

std::size_t next_pow2(std::size_t x) {
    std::size_t p = 1;
    while (p < x) p <<= 1;
    return p;
}

WindowSchedule::WindowSchedule(std::size_t n, std::size_t m, std::size_t m_bar, std::size_t ell)
    : m_bar_(m_bar), group_(ell * m_bar), count_(0) {
    if (m == 0 || m_bar < m || ell == 0) throw std::invalid_argument("window_schedule: invalid lane geometry");
    if (n < m) return;
    const std::size_t starts = n - m + 1;
    const std::size_t groups = (starts + group_ - 1) / group_;
    // The last group only needs as many residues as it has live starts.
    const std::size_t tail = starts - (groups - 1) * group_;
    count_ = (groups - 1) * m_bar_ + std::min(m_bar_, tail);
}

WindowSchedule window_schedule(std::size_t n, std::size_t m, std::size_t m_bar, std::size_t ell) {
    return WindowSchedule(n, m, m_bar, ell);
}

}  // namespace packmatch
