"""hopfkit: verification toolkit for Jordanian quantum algebras."""
