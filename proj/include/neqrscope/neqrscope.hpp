#ifndef NEQRSCOPE_NEQRSCOPE_HPP
#define NEQRSCOPE_NEQRSCOPE_HPP

// Everything except the HTTP server (neqrscope/server.hpp), which pulls in cpp-httplib.

#include "neqrscope/analysis.hpp"
#include "neqrscope/api.hpp"
#include "neqrscope/builders.hpp"
#include "neqrscope/circuit.hpp"
#include "neqrscope/decode.hpp"
#include "neqrscope/dense_oracle.hpp"
#include "neqrscope/error.hpp"
#include "neqrscope/image.hpp"
#include "neqrscope/io/analysis_io.hpp"
#include "neqrscope/io/circuit_io.hpp"
#include "neqrscope/io/files.hpp"
#include "neqrscope/io/pgm.hpp"
#include "neqrscope/layout.hpp"
#include "neqrscope/scenarios.hpp"
#include "neqrscope/simulator.hpp"
#include "neqrscope/statevector.hpp"

#endif
