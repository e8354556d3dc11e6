# Report package: figures and table export
