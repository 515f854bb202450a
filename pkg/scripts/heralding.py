"""Heralded emission pattern: detect N-1 photons at theta1, then look at where the last one goes.

Prints the overlap of the heralded state with the W state and the
intensity pattern G^(1)(theta2) of that state next to the unheralded
(constant N) pattern of the fully excited chain.
"""

import argparse
import math

import numpy as np

from multiphoton import (
    EmitterChain,
    conditional_state,
    fully_excited,
    g1_conditional,
    heralded_w_state,
    overlap,
    w_state,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=6)
    parser.add_argument("--kd", type=float, default=math.pi)
    parser.add_argument("--theta1", type=float, default=0.0)
    parser.add_argument("--points", type=int, default=13)
    args = parser.parse_args()

    chain = EmitterChain(args.n, args.kd)
    state = conditional_state(chain, [args.theta1] * (args.n - 1))
    print(f"|<W|psi>|^2          = {abs(overlap(w_state(args.n), state)) ** 2:.12f}")
    target = heralded_w_state(chain, args.theta1)
    print(f"|<W_theta1|psi>|^2   = {abs(overlap(target, state)) ** 2:.12f}")
    print()
    print(" theta2     heralded   unheralded")
    for t in np.linspace(-math.pi / 2, math.pi / 2, args.points):
        print(f"{t:+.4f}  {g1_conditional(state, t, chain):10.5f}  {g1_conditional(fully_excited(args.n), t, chain):10.5f}")


if __name__ == "__main__":
    main()
