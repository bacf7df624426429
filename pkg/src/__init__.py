# Quadbound package
