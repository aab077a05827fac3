#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <powertuple/natural.hpp>

namespace powertuple {

struct Convergent {
    Natural p;
    Natural q;

    friend bool operator==(const Convergent&, const Convergent&) = default;
};

/// Simple continued fraction of N^(1/k) for N not a perfect k-th power.
///
/// Partial quotients are certified: the root is enclosed in
/// [m, m + 1] / 2^P with m = iroot(N * 2^(kP), k), the enclosure is pushed
/// through the Moebius map of the current convergents, and a quotient is
/// accepted only when both ends of the image share the same floor. When
/// they do not, P is doubled and the chain resumes from the last certified
/// convergent pair.
class SurdExpansion {
public:
    /// Called with (j, p_j, q_j, a_{j+1}); returning true stops the expansion at j.
    using StopPredicate =
        std::function<bool(std::size_t, const Natural&, const Natural&, const Natural&)>;

    static constexpr std::size_t kDefaultTermCap = 10000;

    static SurdExpansion expand(const Natural& radicand, unsigned k, std::size_t terms);
    static SurdExpansion expand_until(const Natural& radicand, unsigned k, const StopPredicate& stop,
                                      std::size_t max_terms = kDefaultTermCap);

    /// A copy carrying at least `terms` quotients.
    [[nodiscard]] SurdExpansion extended(std::size_t terms) const;

    const Natural& radicand() const { return radicand_; }
    unsigned root_index() const { return k_; }
    std::size_t size() const { return quotients_.size(); }
    std::span<const Natural> quotients() const { return quotients_; }
    std::span<const Convergent> convergents() const { return convergents_; }
    const Natural& quotient(std::size_t j) const;
    const Convergent& convergent(std::size_t j) const;
    unsigned precision_bits() const { return precision_bits_; }
    /// Index at which expand_until's predicate fired.
    std::optional<std::size_t> stop_index() const { return stop_index_; }

private:
    SurdExpansion(Natural radicand, unsigned k);

    Natural next_quotient();
    void push(Natural quotient);
    void raise_precision();

    Natural radicand_;
    unsigned k_ = 0;
    std::vector<Natural> quotients_;
    std::vector<Convergent> convergents_;
    unsigned precision_bits_ = 0;
    Natural enclosure_lo_; // root lies in [enclosure_lo_, enclosure_lo_ + 1] / 2^precision_bits_
    std::optional<std::size_t> stop_index_;
};

/// The j-th convergent (p_j, q_j); throws std::out_of_range past the computed terms.
const Convergent& convergent(const SurdExpansion& expansion, std::size_t j);

} // namespace powertuple
