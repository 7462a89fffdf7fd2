# Renderers module