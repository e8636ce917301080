#include "rml/experiment.hpp"

int main(int argc, char** argv) { return rml::cli_main(argc, argv); }
