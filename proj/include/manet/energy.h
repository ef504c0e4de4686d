#ifndef MANET_ENERGY_H
#define MANET_ENERGY_H

#include "manet/types.h"

#include <cstdint>

namespace manet {

/**
 * Per-mode energy parameters. Powers are in mW, energies in mJ and the
 * bitrate in bit/s, so a packet of b bits costs b * txPower / bitrate mJ
 * to send and b * rxPower / bitrate mJ to receive. Idle listening draws
 * the receive power.
 */
struct EnergyParams
{
  double txPower = 330.0;    // mW
  double rxPower = 230.0;    // mW
  double bitrate = 2.0e6;    // bit/s
  double sleepPower = 0.0;   // mW
  double initialEnergy = 1.0e6; // mJ

  double IdlePower () const { return rxPower; }
  void Validate () const;
};

class NonPositiveSize : public SimError
{
public:
  explicit NonPositiveSize (double bits);
};

/// Energy to transmit one packet, mJ.
double TxEnergy (double packetBits, const EnergyParams &params = {});
/// Energy to receive one packet, mJ.
double RxEnergy (double packetBits, const EnergyParams &params = {});

enum class EnergyStatus
{
  Ok,
  DeadNode,
};

/**
 * Energy ledger of one node.
 *
 * The node's time line is split into idle (or sleep) stretches, which are
 * charged lazily by AccrueTo(), and radio activities (one transmission or
 * reception at a time), which are opened with BeginActivity() and charged
 * as whole frames when they complete. Remaining energy never goes below
 * zero; the node dies at the exact crossing instant.
 */
class EnergyAccount
{
public:
  explicit EnergyAccount (const EnergyParams &params = {});

  /// Charge the baseline (idle or sleep) power up to t. No-op while an
  /// activity is open or after death.
  void AccrueTo (SimTime t);

  /// Charge idle power over [from, to]; from must equal the last accrual
  /// instant.
  void AccrueIdle (SimTime from, SimTime to);

  /// Accrue to t, then open an activity. DeadNode leaves the account as is.
  EnergyStatus BeginActivity (SimTime t);
  /// A frame ending at t and the next one starting at t may both be open.
  bool InActivity () const { return m_openActivities > 0; }

  /// Close the open activity as a complete frame of the given size.
  EnergyStatus ChargeTx (double packetBits, SimTime start, SimTime end);
  EnergyStatus ChargeRx (double packetBits, SimTime start, SimTime end);

  /// Close an activity cut short at `until` (end of run), charging the
  /// mode power for the elapsed part only.
  void ChargePartial (bool transmit, SimTime start, SimTime until);

  /// Switch the baseline between idle and sleep at t.
  void SetSleeping (SimTime t, bool sleeping);
  bool Sleeping () const { return m_sleeping; }

  double ConsumedIdle () const { return m_consumedIdle; }
  double ConsumedSleep () const { return m_consumedSleep; }
  double ConsumedTx () const { return m_consumedTx; }
  double ConsumedRx () const { return m_consumedRx; }
  double ConsumedTotal () const { return m_consumedIdle + m_consumedSleep + m_consumedTx + m_consumedRx; }
  double Remaining () const { return m_remaining; }
  double Initial () const { return m_params.initialEnergy; }
  bool Alive () const { return m_alive; }
  SimTime LastAccrualAt () const { return m_lastAccrual; }
  SimTime DiedAt () const { return m_diedAt; }

  // time spent per mode, s
  double IdleTime () const { return m_idleTime; }
  double SleepTime () const { return m_sleepTime; }
  double TxTime () const { return m_txTime; }
  double RxTime () const { return m_rxTime; }
  double DeadTime () const { return m_deadTime; }
  double AccountedTime () const { return m_idleTime + m_sleepTime + m_txTime + m_rxTime + m_deadTime; }

  const EnergyParams &Params () const { return m_params; }

private:
  /// Charge `power` over [from, to] into the given buckets, handling the
  /// depletion crossing.
  void Drain (double power, SimTime from, SimTime to, double &energyBucket, double &timeBucket);
  EnergyStatus ChargeFrame (double energy, SimTime start, SimTime end, double &energyBucket, double &timeBucket);

  EnergyParams m_params;
  double m_consumedIdle = 0.0;
  double m_consumedSleep = 0.0;
  double m_consumedTx = 0.0;
  double m_consumedRx = 0.0;
  double m_remaining;
  double m_idleTime = 0.0;
  double m_sleepTime = 0.0;
  double m_txTime = 0.0;
  double m_rxTime = 0.0;
  double m_deadTime = 0.0;
  SimTime m_lastAccrual = 0.0;
  SimTime m_diedAt = -1.0;
  bool m_alive = true;
  bool m_sleeping = false;
  int m_openActivities = 0;
};

} // namespace manet

#endif
