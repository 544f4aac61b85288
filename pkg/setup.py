from setuptools import setup, find_packages


setup(name='poseval',
      version='0.1.0',
      description="Scoring of 6D object pose and 2D detection benchmark submissions",
      packages=find_packages(),
      install_requires=[
          "numpy>=1.20",
          "scipy>=1.10",
          "pint>=0.10",
          "toolz",
          "pypng>=0.0.20",
          "matplotlib>=3.3",
      ],
      entry_points={
          'console_scripts': [
              'poseval = poseval.cli.main:main',
          ]
      },
      classifiers=[
          'Programming Language :: Python :: 3',
          'Programming Language :: Python :: 3.8',
          'Programming Language :: Python :: 3.9',
          'Programming Language :: Python :: 3.10',
      ],
      )
