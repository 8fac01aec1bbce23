#include "tsnlab/metrics/key_ledger.hpp"

#include <stdexcept>

namespace tsnlab::metrics {

void KeyLedger::reserve(std::size_t keys) { entries_.reserve(keys + 1); }

KeyLedger::Entry& KeyLedger::at(std::int64_t key) {
    if (key <= 0) throw std::invalid_argument("key ledger: keys start at 1");
    const auto idx = static_cast<std::size_t>(key);
    if (idx >= entries_.size()) entries_.resize(idx + 1);
    return entries_[idx];
}

Stage KeyLedger::furthest(std::int64_t key) const {
    const auto idx = static_cast<std::size_t>(key);
    if (key <= 0 || idx >= entries_.size()) return Stage::None;
    return entries_[idx].stage;
}

void KeyLedger::reach(std::int64_t key, Stage stage) {
    auto& e = at(key);
    if (stage == Stage::Published && e.stage == Stage::None) ++published_;
    if (stage > e.stage) e.stage = stage;
}

void KeyLedger::on_tap(TapPoint point, std::int64_t key, TimeNs time) {
    if (key <= 0) return;
    switch (point) {
    case TapPoint::PEgress: {
        auto& e = at(key);
        if (!e.has_egress) {
            e.has_egress = true;
            e.first_egress = time;
        }
        reach(key, Stage::PEgress);
        break;
    }
    case TapPoint::BIngressFromP: reach(key, Stage::BIngressFromP); break;
    case TapPoint::LIngress: reach(key, Stage::LIngress); break;
    case TapPoint::LEgress: reach(key, Stage::LEgress); break;
    case TapPoint::BIngressFromL: reach(key, Stage::BIngressFromL); break;
    case TapPoint::PIngress: reach(key, Stage::PIngress); break;
    }
}

void KeyLedger::on_returned(std::int64_t key, TimeNs ingress_time) {
    auto& e = at(key);
    if (e.stage == Stage::Returned) return;
    e.stage = Stage::Returned;
    ++returned_;
    returned_keys_.push_back(key);
    returned_times_.push_back(ingress_time);
    if (e.has_egress) rtts_.push_back(ingress_time - e.first_egress);
}

DropCounts KeyLedger::drop_counts() const {
    DropCounts d;
    for (std::size_t k = 1; k < entries_.size(); ++k) {
        switch (entries_[k].stage) {
        case Stage::None:
        case Stage::Returned: break;
        case Stage::Published:
        case Stage::PIngress: ++d.p; break;
        case Stage::PEgress:
        case Stage::BIngressFromP: ++d.b_to_l; break;
        case Stage::LIngress:
        case Stage::LDelivered:
        case Stage::LPublished: ++d.l; break;
        case Stage::LEgress:
        case Stage::BIngressFromL: ++d.b_to_p; break;
        }
    }
    return d;
}

} // namespace tsnlab::metrics
