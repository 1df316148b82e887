#include "lab.hpp"

int main(int argc, char** argv) { return cdqs::lab::main_entry(argc, argv); }
