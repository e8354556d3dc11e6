# Numerical kernels: decompositions, topic models, sampling, language models
