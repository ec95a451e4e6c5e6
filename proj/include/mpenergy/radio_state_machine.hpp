#pragma once

#include "mpenergy/radio_profile.hpp"

namespace mpenergy {

enum class RadioState { idle, promotion, active, tail };
const char* to_string(RadioState s);

/// Power-state tracker for one interface. Demand edges drive the legal
/// transitions (idle->promotion->active, active->tail, tail->active without
/// a new promotion, tail->idle on expiry); advancing the clock integrates
/// the state energy at constant power per state. Promotion and tail charge
/// their episode energies linearly over their durations, so an interrupted
/// tail is billed exactly its elapsed fraction.
///
/// Per-byte transfer energy is accounted by the owner via
/// add_transfer_energy(); accumulated_j() is the interface total.
///
/// Single-owner mutable; the clock may never run backwards.
class RadioStateMachine {
public:
    explicit RadioStateMachine(const RadioProfile& profile);

    /// Signal whether the interface wants to move data right now.
    void set_demand(bool demand, double now_ms);

    /// Process due transitions and integrate energy up to now_ms.
    void advance_to(double now_ms);

    /// Runs promotion/tail to completion after the last demand; leaves the
    /// machine idle. Returns the time at which it went idle.
    double drain(double now_ms);

    void add_transfer_energy(double joules);

    RadioState state() const { return state_; }
    bool transmit_capable() const { return state_ == RadioState::active; }
    double state_entry_ms() const { return state_entry_ms_; }
    double state_energy_j() const { return state_energy_j_; }
    double transfer_energy_j() const { return transfer_energy_j_; }
    double accumulated_j() const { return state_energy_j_ + transfer_energy_j_; }
    int promotion_count() const { return promotion_count_; }
    int full_tail_count() const { return full_tail_count_; }
    int interrupted_tail_count() const { return interrupted_tail_count_; }

private:
    void enter(RadioState s, double now_ms);
    double state_power_w() const;
    double pending_boundary_ms() const;  // next timed transition, or +inf

    const RadioProfile* profile_;
    RadioState state_ = RadioState::idle;
    bool demand_ = false;
    double state_entry_ms_ = 0;
    double clock_ms_ = 0;
    double state_energy_j_ = 0;
    double transfer_energy_j_ = 0;
    int promotion_count_ = 0;
    int full_tail_count_ = 0;
    int interrupted_tail_count_ = 0;
};

} // namespace mpenergy
