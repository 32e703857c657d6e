"""High-precision SSPPR engines exposed at :mod:`core.engines`.

Every engine starts from all mass as residue on the source and returns a
:class:`~core.engines.state.PPRVector` carrying both the estimate and the
final residues.
"""

from . import forward_push, kernels, power_iteration, power_push, sim_push, state

__all__ = ["forward_push", "kernels", "power_iteration", "power_push", "sim_push", "state"]
