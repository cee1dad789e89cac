#!/usr/bin/env python3
"""Independent oracle for the unsynchronized delay expectation.

Models two wall-clocked processes with plain arithmetic and no imports from
the package under test:

  * a physics process whose simulation clock advances at ``rho`` simulated
    seconds per wall second,
  * a network process that runs in real time, so a packet with transit delay
    ``D`` arrives ``D`` wall seconds after it was sent.

Without a synchronization gate the physics side observes the arrival at
whatever its own clock reads at that wall instant.  If the packet is sent at
wall time W0 (physics clock rho*W0), it arrives at wall time W0 + D, when the
physics clock reads rho*(W0 + D).  The observed simulated delay is therefore

    rho*(W0 + D) - rho*W0 = rho*D

independent of when the packet was sent.  With rho = 0.5 and D = 1.0 s the
expected observed delay is 0.5 s, which is the center of the accepted
[0.45, 0.55] band.  A correctly gated run must observe exactly D instead.
"""

import sys


def observed_unsync_delay(rho: float, send_wall_s: float, transit_s: float) -> float:
    sim_at_send = rho * send_wall_s
    sim_at_arrival = rho * (send_wall_s + transit_s)
    return sim_at_arrival - sim_at_send


def main() -> int:
    failures = 0
    print(f"{'rho':>6} {'send_wall_s':>12} {'transit_s':>10} {'observed_s':>11} {'rho*D':>8}")
    for rho in (0.25, 0.5, 1.0, 2.0):
        for send_wall in (0.0, 0.123, 7.5):
            for transit in (0.01, 0.5, 1.0):
                got = observed_unsync_delay(rho, send_wall, transit)
                want = rho * transit
                ok = abs(got - want) < 1e-12
                failures += 0 if ok else 1
                print(f"{rho:6.2f} {send_wall:12.3f} {transit:10.3f} {got:11.6f} {want:8.4f}"
                      + ("" if ok else "  MISMATCH"))
    if failures:
        print(f"{failures} mismatches", file=sys.stderr)
        return 1
    print("all cases match rho*D")
    return 0


if __name__ == "__main__":
    sys.exit(main())
