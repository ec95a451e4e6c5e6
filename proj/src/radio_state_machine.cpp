#include "mpenergy/radio_state_machine.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace mpenergy {

const char* to_string(RadioState s) {
    switch (s) {
    case RadioState::idle: return "idle";
    case RadioState::promotion: return "promotion";
    case RadioState::active: return "active";
    case RadioState::tail: return "tail";
    }
    return "?";
}

RadioStateMachine::RadioStateMachine(const RadioProfile& profile) : profile_(&profile) {}

double RadioStateMachine::state_power_w() const {
    switch (state_) {
    case RadioState::promotion:
        return profile_->promotion_energy_j / profile_->promotion_duration_s;
    case RadioState::tail:
        return profile_->tail_energy_j / profile_->tail_duration_s;
    default:
        return 0.0;  // idle draws nothing; active transfer energy is per-byte
    }
}

double RadioStateMachine::pending_boundary_ms() const {
    if (state_ == RadioState::promotion)
        return state_entry_ms_ + profile_->promotion_duration_s * 1000.0;
    if (state_ == RadioState::tail)
        return state_entry_ms_ + profile_->tail_duration_s * 1000.0;
    return std::numeric_limits<double>::infinity();
}

void RadioStateMachine::enter(RadioState s, double now_ms) {
    if (s == RadioState::promotion) ++promotion_count_;
    state_ = s;
    state_entry_ms_ = now_ms;
}

void RadioStateMachine::advance_to(double now_ms) {
    if (now_ms < clock_ms_)
        throw std::logic_error("RadioStateMachine: clock moved backwards");
    while (clock_ms_ < now_ms) {
        const double boundary = pending_boundary_ms();
        const double seg_end = std::min(now_ms, boundary);
        state_energy_j_ += state_power_w() * (seg_end - clock_ms_) / 1000.0;
        clock_ms_ = seg_end;
        if (clock_ms_ == boundary) {
            if (state_ == RadioState::promotion) {
                enter(demand_ ? RadioState::active : RadioState::tail, boundary);
            } else {  // tail expiry
                ++full_tail_count_;
                enter(RadioState::idle, boundary);
                if (demand_) enter(RadioState::promotion, boundary);
            }
        }
    }
}

void RadioStateMachine::set_demand(bool demand, double now_ms) {
    advance_to(now_ms);
    if (demand == demand_) return;
    demand_ = demand;
    if (demand) {
        if (state_ == RadioState::idle) {
            enter(RadioState::promotion, now_ms);
        } else if (state_ == RadioState::tail) {
            ++interrupted_tail_count_;
            enter(RadioState::active, now_ms);  // no new promotion
        }
        // promotion/active: the pending boundary already honors demand_.
    } else {
        if (state_ == RadioState::active) enter(RadioState::tail, now_ms);
    }
}

double RadioStateMachine::drain(double now_ms) {
    set_demand(false, now_ms);
    // Let a committed promotion finish, then run the tail out.
    while (state_ != RadioState::idle) {
        const double b = pending_boundary_ms();
        if (state_ == RadioState::active) {
            enter(RadioState::tail, clock_ms_);
            continue;
        }
        advance_to(b);
    }
    return clock_ms_;
}

void RadioStateMachine::add_transfer_energy(double joules) {
    if (joules < 0) throw std::domain_error("transfer energy must be >= 0");
    transfer_energy_j_ += joules;
}

} // namespace mpenergy
