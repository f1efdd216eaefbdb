"""Left dihedral codes over finite fields: construction, duality classes, enumeration."""
