#include "doctest.h"

#include "manet/energy.h"

#include <cmath>

using namespace manet;

TEST_CASE ("per-packet energy follows bits * power / bitrate")
{
  CHECK (std::abs (TxEnergy (4096) - 0.67584) <= 1e-12 * 0.67584);
  CHECK (std::abs (RxEnergy (4096) - 0.47104) <= 1e-12 * 0.47104);
  CHECK (TxEnergy (2e6) == doctest::Approx (330.0));
  CHECK (RxEnergy (2e6) == doctest::Approx (230.0));
  for (double bits : {64.0 * 8, 512.0 * 8, 1500.0 * 8, 13.0})
    {
      const double airtime = bits / 2e6;
      CHECK (TxEnergy (bits) / airtime == doctest::Approx (330.0));
      CHECK (RxEnergy (bits) / airtime == doctest::Approx (230.0));
      CHECK (RxEnergy (bits) / TxEnergy (bits) == doctest::Approx (230.0 / 330.0));
    }
  CHECK_THROWS_AS (TxEnergy (0), NonPositiveSize);
  CHECK_THROWS_AS (RxEnergy (-8), NonPositiveSize);
}

TEST_CASE ("idle accrual charges the receive power")
{
  EnergyAccount a;
  a.AccrueIdle (0.0, 1.0);
  CHECK (a.ConsumedIdle () == doctest::Approx (230.0));
  CHECK (a.IdleTime () == 1.0);
  a.AccrueIdle (1.0, 1.0);
  CHECK (a.ConsumedIdle () == doctest::Approx (230.0));
  CHECK_THROWS_AS (a.AccrueIdle (0.5, 2.0), SimError);
}

TEST_CASE ("idle depletion dies at the crossing instant")
{
  EnergyParams p;
  p.initialEnergy = 115.0;
  EnergyAccount a (p);
  a.AccrueIdle (0.0, 1.0);
  CHECK_FALSE (a.Alive ());
  CHECK (a.Remaining () == 0.0);
  CHECK (a.DiedAt () == doctest::Approx (0.5));
  CHECK (a.ConsumedIdle () == doctest::Approx (115.0));
  CHECK (a.AccountedTime () == doctest::Approx (1.0));
}

TEST_CASE ("frames charge the full frame and accrue idle up to it first")
{
  EnergyAccount a;
  CHECK (a.BeginActivity (2.0) == EnergyStatus::Ok);
  CHECK (a.ChargeTx (4096, 2.0, 2.0 + 4096 / 2e6) == EnergyStatus::Ok);
  CHECK (a.ConsumedIdle () == doctest::Approx (460.0));
  CHECK (a.ConsumedTx () == doctest::Approx (0.67584));
  CHECK (a.TxTime () == doctest::Approx (4096 / 2e6));
  a.AccrueTo (10.0);
  CHECK (a.AccountedTime () == doctest::Approx (10.0));
  CHECK (a.Initial () == doctest::Approx (a.Remaining () + a.ConsumedTotal ()));
}

TEST_CASE ("dead accounts refuse activity without charging")
{
  EnergyParams p;
  p.initialEnergy = 1.0;
  EnergyAccount a (p);
  a.AccrueTo (1.0);
  REQUIRE_FALSE (a.Alive ());
  const double before = a.ConsumedTotal ();
  CHECK (a.BeginActivity (2.0) == EnergyStatus::DeadNode);
  CHECK (a.ChargeRx (4096, 2.0, 2.002) == EnergyStatus::DeadNode);
  CHECK (a.ConsumedTotal () == before);
  CHECK (a.Remaining () == 0.0);
}

TEST_CASE ("broadcast receivers are each charged once")
{
  const double bits = 4096;
  EnergyAccount sender;
  EnergyAccount r[3];
  sender.BeginActivity (0.0);
  for (auto &acct : r)
    {
      acct.BeginActivity (0.0);
    }
  sender.ChargeTx (bits, 0.0, bits / 2e6);
  double rx = 0.0;
  for (auto &acct : r)
    {
      acct.ChargeRx (bits, 0.0, bits / 2e6);
      rx += acct.ConsumedRx ();
    }
  CHECK (sender.ConsumedTx () == doctest::Approx (0.67584));
  CHECK (rx == doctest::Approx (3 * 0.47104));
}

TEST_CASE ("frame energy can deplete mid-frame")
{
  EnergyParams p;
  p.initialEnergy = 0.3;
  EnergyAccount a (p);
  a.BeginActivity (0.0);
  a.ChargeTx (4096, 0.0, 4096 / 2e6);
  CHECK_FALSE (a.Alive ());
  CHECK (a.Remaining () == 0.0);
  CHECK (a.ConsumedTx () == doctest::Approx (0.3));
  CHECK (a.DiedAt () == doctest::Approx (4096 / 2e6 * 0.3 / 0.67584));
}

TEST_CASE ("sleep windows switch the baseline power")
{
  EnergyParams p;
  p.sleepPower = 10.0;
  EnergyAccount a (p);
  a.SetSleeping (1.0, true);
  a.SetSleeping (3.0, false);
  a.AccrueTo (4.0);
  CHECK (a.ConsumedIdle () == doctest::Approx (460.0));
  CHECK (a.ConsumedSleep () == doctest::Approx (20.0));
  CHECK (a.SleepTime () == doctest::Approx (2.0));
  CHECK (a.IdleTime () == doctest::Approx (2.0));
}

TEST_CASE ("partial charge at end of run covers the elapsed part only")
{
  EnergyAccount a;
  a.BeginActivity (0.0);
  a.ChargePartial (true, 0.0, 0.001);
  CHECK (a.ConsumedTx () == doctest::Approx (0.33));
  CHECK (a.TxTime () == doctest::Approx (0.001));
}

TEST_CASE ("back-to-back frames opened before the first is charged")
{
  EnergyAccount a;
  a.BeginActivity (1.0);
  // next frame starts at the instant the first ends, before its charge lands
  a.BeginActivity (1.002);
  a.ChargeRx (4000, 1.0, 1.002);
  a.AccrueTo (1.003);
  CHECK (a.InActivity ());
  a.ChargeTx (4000, 1.002, 1.004);
  a.AccrueTo (2.0);
  CHECK (a.AccountedTime () == doctest::Approx (2.0).epsilon (1e-12));
  CHECK (a.RxTime () == doctest::Approx (0.002));
  CHECK (a.TxTime () == doctest::Approx (0.002));
  CHECK (a.IdleTime () == doctest::Approx (1.996));
}
