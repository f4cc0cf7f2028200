from setuptools import setup, find_packages

setup(
    name='cqt-qbd-solver',
    version='0.1',
    packages=find_packages(exclude=['examples', 'examples.*']),
    install_requires=['numpy', 'scipy', 'pydantic>=2', 'python-dotenv'],  # see requirements.txt
    entry_points={
        'console_scripts': ['qbd-solver=qbd_solver.main:main'],
    },
)
