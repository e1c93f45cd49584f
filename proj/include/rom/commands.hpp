#pragma once

#include "rom/config.hpp"
#include "rom/pipeline.hpp"

namespace rom {

// Experiment harness commands. Each takes a fully parsed configuration,
// reads/writes artifacts under cfg.output_dir, and returns a process exit
// code (0 on success). Configuration and solver failures are thrown as the
// exception types in types.hpp; the CLI entry point maps them to exit codes.

int cmd_run_fom(const ExperimentConfig& cfg);
int cmd_build_rom(const ExperimentConfig& cfg);
int cmd_estimate(const ExperimentConfig& cfg);
int cmd_adapt_deim(const ExperimentConfig& cfg);
int cmd_sweep(const ExperimentConfig& cfg);

// POD dimension for this run: rom.pod_dim if given, else the energy
// criterion applied to the stored spectrum, else the default dimension.
int resolve_pod_dim(const ExperimentConfig& cfg, const PodBasis& full_basis);

// Bases as persisted by cmd_build_rom, re-read from the output directory.
BasisSet load_bases(const ExperimentConfig& cfg);

}  // namespace rom
