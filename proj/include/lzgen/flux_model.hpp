// flux_model.hpp — two-level flux-qubit Hamiltonian near Phi0/2 and its transition frequency

#pragma once

#include "lzgen/cpb_model.hpp"
#include "lzgen/params.hpp"

namespace lzgen {

// 2x2 Hamiltonian in Hz units at flux offset dphi_e (units of Phi0):
//   H = -gamma E_J (2 pi dphi_e) sigma_z - (Delta/2) sigma_x
// Trace-free by construction. Callers are expected to keep |dphi_e| within
// p.sweep_halfrange_phi0; the model stays valid slightly beyond, so this is
// enforced only at configuration time, not here.
HermitianMatrix flux_hamiltonian(const FluxParams& p, double dphi_e);

// Gap of the 2x2 Hamiltonian, Hz: sqrt((2 gamma f_EJ 2 pi dphi_e)^2 + f_Delta^2).
double flux_transition_frequency(const FluxParams& p, double dphi_e);

} // namespace lzgen
