"""Regenerate the LiH/STO-3G FCIDUMP set shipped in this directory.

Requires PySCF. Li carries 2p functions in STO-3G, which the built-in
s-only integral engine does not handle, so these files are produced
externally and consumed through the FCIDUMP reader.
"""
import numpy as np
from pyscf import gto, scf
from pyscf.tools import fcidump

LENGTHS = np.round(np.arange(0.6, 4.01, 0.2), 2)

for r in LENGTHS:
    mol = gto.M(atom=f"Li 0 0 0; H 0 0 {r}", basis="sto-3g", unit="Angstrom",
                verbose=0)
    mf = scf.RHF(mol)
    mf.conv_tol = 1e-12
    mf.kernel()
    assert mf.converged, r
    fcidump.from_scf(mf, f"lih_{r:.2f}.fcidump", tol=1e-14)
    print(f"{r:.2f} {mf.e_tot:.12f}")
