#include "polygeom/cli.hpp"

int main(int argc, char** argv) { return polygeom::cli::dispatch(argc, argv); }
