#include "manet/energy.h"

#include <cmath>
#include <string>

namespace manet {

void
EnergyParams::Validate () const
{
  if (!(txPower > 0.0))
    {
      throw SimError ("energy.tx_power: must be > 0");
    }
  if (!(rxPower > 0.0))
    {
      throw SimError ("energy.rx_power: must be > 0");
    }
  if (!(bitrate > 0.0))
    {
      throw SimError ("radio.bitrate: must be > 0");
    }
  if (!(sleepPower >= 0.0))
    {
      throw SimError ("energy.sleep_power: must be >= 0");
    }
  if (!(initialEnergy > 0.0))
    {
      throw SimError ("energy.initial: must be > 0");
    }
}

NonPositiveSize::NonPositiveSize (double bits)
  : SimError ("packet size must be > 0 bits, got " + std::to_string (bits))
{
}

double
TxEnergy (double packetBits, const EnergyParams &params)
{
  if (!(packetBits > 0.0))
    {
      throw NonPositiveSize (packetBits);
    }
  return packetBits * params.txPower / params.bitrate;
}

double
RxEnergy (double packetBits, const EnergyParams &params)
{
  if (!(packetBits > 0.0))
    {
      throw NonPositiveSize (packetBits);
    }
  return packetBits * params.rxPower / params.bitrate;
}

EnergyAccount::EnergyAccount (const EnergyParams &params)
  : m_params (params),
    m_remaining (params.initialEnergy)
{
}

void
EnergyAccount::Drain (double power, SimTime from, SimTime to, double &energyBucket, double &timeBucket)
{
  const double span = to - from;
  if (span <= 0.0)
    {
      return;
    }
  const double needed = power * span;
  if (needed < m_remaining)
    {
      energyBucket += needed;
      m_remaining -= needed;
      timeBucket += span;
      return;
    }
  // depletion inside [from, to]
  const double lived = m_remaining / power;
  energyBucket += m_remaining;
  m_remaining = 0.0;
  timeBucket += lived;
  m_deadTime += span - lived;
  m_diedAt = from + lived;
  m_alive = false;
}

void
EnergyAccount::AccrueTo (SimTime t)
{
  if (m_openActivities > 0 || t <= m_lastAccrual)
    {
      return;
    }
  if (!m_alive)
    {
      m_deadTime += t - m_lastAccrual;
    }
  else if (m_sleeping)
    {
      if (m_params.sleepPower > 0.0)
        {
          Drain (m_params.sleepPower, m_lastAccrual, t, m_consumedSleep, m_sleepTime);
        }
      else
        {
          m_sleepTime += t - m_lastAccrual;
        }
    }
  else
    {
      Drain (m_params.IdlePower (), m_lastAccrual, t, m_consumedIdle, m_idleTime);
    }
  m_lastAccrual = t;
}

void
EnergyAccount::AccrueIdle (SimTime from, SimTime to)
{
  if (from != m_lastAccrual || to < from)
    {
      throw SimError ("idle accrual interval does not continue the account");
    }
  AccrueTo (to);
}

EnergyStatus
EnergyAccount::BeginActivity (SimTime t)
{
  AccrueTo (t);
  if (!m_alive)
    {
      return EnergyStatus::DeadNode;
    }
  ++m_openActivities;
  return EnergyStatus::Ok;
}

EnergyStatus
EnergyAccount::ChargeFrame (double energy, SimTime start, SimTime end, double &energyBucket, double &timeBucket)
{
  if (m_openActivities == 0)
    {
      AccrueTo (start);
    }
  else
    {
      --m_openActivities;
    }
  if (!m_alive)
    {
      return EnergyStatus::DeadNode;
    }
  const double span = end - start;
  if (energy < m_remaining)
    {
      energyBucket += energy;
      m_remaining -= energy;
      timeBucket += span;
    }
  else
    {
      const double lived = span * (m_remaining / energy);
      energyBucket += m_remaining;
      m_remaining = 0.0;
      timeBucket += lived;
      m_deadTime += span - lived;
      m_diedAt = start + lived;
      m_alive = false;
    }
  m_lastAccrual = end;
  return EnergyStatus::Ok;
}

EnergyStatus
EnergyAccount::ChargeTx (double packetBits, SimTime start, SimTime end)
{
  return ChargeFrame (TxEnergy (packetBits, m_params), start, end, m_consumedTx, m_txTime);
}

EnergyStatus
EnergyAccount::ChargeRx (double packetBits, SimTime start, SimTime end)
{
  return ChargeFrame (RxEnergy (packetBits, m_params), start, end, m_consumedRx, m_rxTime);
}

void
EnergyAccount::ChargePartial (bool transmit, SimTime start, SimTime until)
{
  if (m_openActivities > 0)
    {
      --m_openActivities;
    }
  if (!m_alive)
    {
      AccrueTo (until);
      return;
    }
  if (transmit)
    {
      Drain (m_params.txPower, start, until, m_consumedTx, m_txTime);
    }
  else
    {
      Drain (m_params.rxPower, start, until, m_consumedRx, m_rxTime);
    }
  m_lastAccrual = until;
}

void
EnergyAccount::SetSleeping (SimTime t, bool sleeping)
{
  AccrueTo (t);
  m_sleeping = sleeping;
}

} // namespace manet
