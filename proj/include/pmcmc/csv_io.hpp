#ifndef PMCMC_CSV_IO_HPP
#define PMCMC_CSV_IO_HPP

#include <string>

#include "pmcmc/kernel.hpp"

namespace pmcmc {

// Chain file format: header "iter,slot,moved,coord_0,...,coord_{D-1}", one
// row per recorded state starting with the initial state, UTF-8, LF line
// endings, doubles as shortest round-trip decimals. thin > 1 keeps the
// initial state and every thin-th iteration.
void write_chain_csv(const std::string& path, const ChainRecord& record,
                     std::uint64_t thin = 1);

ChainRecord read_chain_csv(const std::string& path);

}  // namespace pmcmc

#endif
