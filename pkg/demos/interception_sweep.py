"""How much can Eve skim before reconciliation fails?

Sweep the power transmittance t2 of Eve's tap (Bob keeps a fraction t2
of the channel beam) and compare the two reconciliation directions, in
both flavors: Shannon rates from simulated median bits, von Neumann
rates from the Gaussian state.  Direct reconciliation dies the moment
Eve holds more than half the beam; reverse reconciliation survives any
t2 > 0.
"""

import numpy as np

from thermalqkd.infotheory import shannon_summary
from thermalqkd.montecarlo import derive_bits, run_protocol
from thermalqkd.protocol import ProtocolConfig, protocol_mutual_informations

NBAR = 200.0
TRIALS = 20000


def shannon_rates(t2, seed):
    cfg = ProtocolConfig.from_power_transmittance(NBAR, t2)
    ens = run_protocol(cfg, TRIALS, seed)
    s = shannon_summary(derive_bits(ens.alice.values).bits,
                        derive_bits(ens.bob.values).bits,
                        derive_bits(ens.eve.values).bits)
    return s.k_dr, s.k_rr


print("  t2    K_DR(sim)  K_RR(sim)   K_DR(vN)   K_RR(vN)")
for k, t2 in enumerate(np.linspace(0.1, 1.0, 10)):
    sim_dr, sim_rr = shannon_rates(float(t2), seed=100 + k)
    vn = protocol_mutual_informations(
        ProtocolConfig.from_power_transmittance(NBAR, float(t2))
    )
    print("%5.2f   %+8.4f   %+8.4f   %+8.4f   %+8.4f"
          % (t2, sim_dr, sim_rr, vn.k_dr, vn.k_rr))

print()
print("the sign change of K_DR at t2 = 0.5 appears in both flavors;")
print("K_RR keeps a positive sign all the way down to a sliver of a")
print("channel, the protocol's central security claim.")
