"""Engine: polynomial rings, Gröbner bases, syzygies, resolutions and the cover solver."""
