#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace mpadet {

using cplx = std::complex<double>;

// Gray-coded square QAM prior: symbol set, per-symbol probabilities and the
// bit labeling. Immutable after construction, safe to share across threads.
class Constellation {
public:
    // order in {4, 16, 64}; uniform prior, per-axis levels {+-c, +-3c, ...}
    // with c = sqrt(3 Es / (2 (Q - 1))).
    static Constellation qam(int order, double symbol_energy = 1.0);

    int size() const { return static_cast<int>(points_.size()); }
    int bits_per_symbol() const { return bits_per_symbol_; }
    int levels_per_axis() const { return levels_; }
    double scale() const { return scale_; }
    double symbol_energy() const { return symbol_energy_; }
    const std::vector<cplx>& points() const { return points_; }
    const std::vector<double>& probs() const { return probs_; }
    const std::vector<double>& log_probs() const { return log_probs_; }

    // Gray label of a point index and its inverse.
    std::uint32_t bits_of_index(int index) const { return index_to_bits_[static_cast<std::size_t>(index)]; }
    int index_of_bits(std::uint32_t bits) const { return bits_to_index_[bits]; }

    // MSB-first bit groups, in-phase group first.
    std::vector<cplx> map_bits(const std::vector<std::uint8_t>& bits) const;
    void append_bits(int index, std::vector<std::uint8_t>& out) const;

    // nearest point in Euclidean distance; exact ties resolve to the lowest
    // point index
    int demap_hard(cplx z) const;

private:
    Constellation() = default;

    std::vector<cplx> points_;
    std::vector<double> probs_;
    std::vector<double> log_probs_;
    std::vector<std::uint32_t> index_to_bits_;
    std::vector<int> bits_to_index_;
    int bits_per_symbol_ = 0;
    int levels_ = 0;
    double scale_ = 0.0;
    double symbol_energy_ = 0.0;
};

}  // namespace mpadet
