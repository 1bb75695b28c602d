#include "mpadet/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mpadet {

namespace {

int gray_encode(int i) { return i ^ (i >> 1); }

// nearest level index in [0, levels), exact midpoints resolve downward
int slice_axis(double u, double c, int levels) {
    const double t = (u / c + static_cast<double>(levels - 1)) / 2.0;
    int i = static_cast<int>(std::ceil(t - 0.5));  // round half down
    return std::clamp(i, 0, levels - 1);
}

}  // namespace

Constellation Constellation::qam(int order, double symbol_energy) {
    if (order != 4 && order != 16 && order != 64) {
        throw std::invalid_argument("Constellation::qam: order must be 4, 16 or 64");
    }
    if (!(symbol_energy > 0.0)) {
        throw std::invalid_argument("Constellation::qam: symbol energy must be positive");
    }

    Constellation cons;
    cons.symbol_energy_ = symbol_energy;
    cons.scale_ = std::sqrt(3.0 * symbol_energy / (2.0 * (order - 1)));

    int bits = 0;
    while ((1 << bits) < order) ++bits;
    cons.bits_per_symbol_ = bits;
    cons.levels_ = 1 << (bits / 2);
    const int levels = cons.levels_;
    const int half_bits = bits / 2;

    cons.points_.resize(static_cast<std::size_t>(order));
    cons.probs_.assign(static_cast<std::size_t>(order), 1.0 / order);
    cons.log_probs_.assign(static_cast<std::size_t>(order), std::log(1.0 / order));
    cons.index_to_bits_.resize(static_cast<std::size_t>(order));
    cons.bits_to_index_.assign(static_cast<std::size_t>(order), -1);

    for (int ii = 0; ii < levels; ++ii) {
        const double re = (2.0 * ii - (levels - 1)) * cons.scale_;
        for (int iq = 0; iq < levels; ++iq) {
            const double im = (2.0 * iq - (levels - 1)) * cons.scale_;
            const int index = ii * levels + iq;
            cons.points_[static_cast<std::size_t>(index)] = cplx{re, im};
            const std::uint32_t label =
                (static_cast<std::uint32_t>(gray_encode(ii)) << half_bits) |
                static_cast<std::uint32_t>(gray_encode(iq));
            cons.index_to_bits_[static_cast<std::size_t>(index)] = label;
            cons.bits_to_index_[label] = index;
        }
    }
    return cons;
}

std::vector<cplx> Constellation::map_bits(const std::vector<std::uint8_t>& bits) const {
    if (bits.size() % static_cast<std::size_t>(bits_per_symbol_) != 0) {
        throw std::invalid_argument("map_bits: bit count not divisible by bits per symbol");
    }
    std::vector<cplx> out;
    out.reserve(bits.size() / static_cast<std::size_t>(bits_per_symbol_));
    for (std::size_t pos = 0; pos < bits.size(); pos += static_cast<std::size_t>(bits_per_symbol_)) {
        std::uint32_t label = 0;
        for (int b = 0; b < bits_per_symbol_; ++b) {
            label = (label << 1) | (bits[pos + static_cast<std::size_t>(b)] & 1u);
        }
        out.push_back(points_[static_cast<std::size_t>(index_of_bits(label))]);
    }
    return out;
}

void Constellation::append_bits(int index, std::vector<std::uint8_t>& out) const {
    const std::uint32_t label = bits_of_index(index);
    for (int b = bits_per_symbol_ - 1; b >= 0; --b) {
        out.push_back(static_cast<std::uint8_t>((label >> b) & 1u));
    }
}

int Constellation::demap_hard(cplx z) const {
    const int ii = slice_axis(z.real(), scale_, levels_);
    const int iq = slice_axis(z.imag(), scale_, levels_);
    return ii * levels_ + iq;
}

}  // namespace mpadet
